#pragma once

// Seeded runs of the exact identity oracles, reported as JSON.

#include <json.hpp>

#include <cstdint>
#include <string>

namespace tauseq {

struct VerifyOptions {
  std::string check;  ///< plucker | plucker4 | states | octahedron | kp | permutation
  int trials = -1;    // per-check default when negative
  int cutoff = -1;
  int max_weight = 6;
  int dim = -1;

  /// Copy with the per-check defaults filled in.
  VerifyOptions resolved() const;
  nlohmann::json to_json() const;
};

/// {"check", "trials", "failures", "first_failure", "seed", ...check-specific fields}.
/// Throws ParseError for an unknown check; Window and Plücker errors propagate.
nlohmann::json run_verify(const VerifyOptions& options, std::uint64_t seed);

}  // namespace tauseq
