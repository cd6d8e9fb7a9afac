#pragma once

// Enumerate convex quadrilaterals, run derive -> generate -> match on each
// and collect deduplicated records.

#include "tauseq/lattice.hpp"
#include "tauseq/oeis.hpp"
#include "tauseq/recurrence.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tauseq {

struct ScanConfig {
  int bound = 5;            ///< edge coordinates in [-bound, bound]
  int edges = 4;            ///< only quadrilaterals are supported
  std::size_t terms = 24;   ///< sequence terms per record, at least 16
  std::uint64_t seed = 0;   ///< recorded for reproducibility; the scan itself draws nothing
  std::string oeis_path;    ///< stripped database; empty disables matching
  std::string output_path;  ///< JSONL output; the summary goes to <output>.summary.json
  unsigned workers = 0;     ///< 0 = hardware concurrency
  MatchPolicy policy;

  /// Throws std::invalid_argument.
  void validate() const;
  nlohmann::json to_json() const;
};

/// All strictly convex counterclockwise quadrilaterals with edge vectors in
/// [-B, B]^2, one per cyclic rotation class (the lexicographically smallest
/// rotation), in lexicographic order of the edge list.
std::vector<SublatticeBasis> enumerate_bases(const ScanConfig& cfg);

struct ScanResult {
  std::vector<nlohmann::json> records;  ///< sequence records by key, then skip records
  nlohmann::json summary;
};

/// Throws std::invalid_argument on a bad config and Error when the database cannot be read.
ScanResult run_scan(const ScanConfig& cfg);

/// JSON Lines text of the records ('\n' terminated).
std::string to_jsonl(const ScanResult& result);

/// Writes cfg.output_path and its summary sidecar. Throws Error on I/O failure.
void write_scan(const ScanResult& result, const std::string& output_path);

}  // namespace tauseq
