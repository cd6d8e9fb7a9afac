#pragma once

// Three-term bilinear recurrences compiled from the octahedral relation of a
// doubly periodic tau function, sequence generation, and the permutation
// action on tau tables.

#include "tauseq/arith.hpp"
#include "tauseq/fock.hpp"
#include "tauseq/lattice.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tauseq {

/// The top offset of the relation is shared by several pairs (or squared),
/// so the newest term cannot be isolated.
class UnsolvableError : public Error {
 public:
  using Error::Error;
};

struct OffsetPair {
  long long hi = 0;
  long long lo = 0;
  friend auto operator<=>(const OffsetPair&, const OffsetPair&) = default;
};

/// s0 T(l+p0)T(l+q0) + s1 T(l+p1)T(l+q1) + s2 T(l+p2)T(l+q2) = 0 for all l.
///
/// Canonical form: each pair has hi >= lo; when the signs are mixed they
/// read (+, -, +) with the odd pair in the middle and the outer pairs ordered
/// by spread hi - lo; offsets are translated so that the smallest is 0 and
/// the relation is replaced by its reflection l -> -l when that sorts lower.
class BilinearRecurrence {
 public:
  BilinearRecurrence(std::array<OffsetPair, 3> pairs, std::array<int, 3> signs);

  const std::array<OffsetPair, 3>& pairs() const { return pairs_; }
  const std::array<int, 3>& signs() const { return signs_; }

  long long min_offset() const;
  long long max_offset() const;
  /// max_offset - min_offset: the number of seed terms needed.
  long long window() const;

  BilinearRecurrence translated(long long shift) const;
  BilinearRecurrence reflected() const;
  BilinearRecurrence canonical() const;

  /// Centered so that hi + lo = 0 in every pair when that is integral,
  /// otherwise the canonical (min offset 0) form.
  BilinearRecurrence display() const;

  /// Throws UnsolvableError naming the colliding pairs.
  void check_solvable() const;
  bool solvable() const;

  /// Stable text key such as "+(4,4)-(8,0)+(7,1)" of the canonical form.
  std::string key() const;

  /// Human-readable relation, e.g. "T(l)^2 - T(l+4)T(l-4) + T(l+3)T(l-3) = 0".
  std::string equation() const;

  friend bool operator==(const BilinearRecurrence&, const BilinearRecurrence&) = default;

 private:
  std::array<OffsetPair, 3> pairs_;
  std::array<int, 3> signs_;
};

/// {"pairs": [[0,0],[4,-4],[3,-3]], "signs": [1,-1,1], "window": 8} (display form).
nlohmann::json recurrence_to_json(const BilinearRecurrence& rec);
/// Accepts any translation of the pairs; "window" is ignored. Throws ParseError.
BilinearRecurrence recurrence_from_json(const nlohmann::json& doc);

struct Derivation {
  QuotientMap quotient;
  ChargeVector base;  ///< degree -2 base point of the octahedron
  /// For each of the three products, the two octahedron vertices whose
  /// projections give the pair, in the order (ab|cd), (ac|bd), (ad|bc).
  std::array<std::array<ChargeVector, 2>, 3> points;
  BilinearRecurrence raw;  ///< projected indices before canonicalization
  BilinearRecurrence recurrence;
};

/// {"w": [...], "step": "1", "torsion_free": true, "elementary_divisors": [...]}, integers as strings.
nlohmann::json quotient_to_json(const QuotientMap& q);

/// {"quotient", "recurrence" (display form), "key", "equation"}.
nlohmann::json derivation_to_json(const Derivation& d);

/// Requires s = 4. Propagates RankError / TorsionError from quotient_map and
/// throws UnsolvableError when the result cannot be iterated.
Derivation derive_recurrence(const SublatticeBasis& basis);

/// Derivation from an arbitrary degree -2 base point (used to check that
/// offsets do not depend on the base).
Derivation derive_recurrence(const SublatticeBasis& basis, const ChargeVector& base);

enum class RunStatus { ok, degenerate, non_integral };

std::string to_string(RunStatus status);

struct SequenceRun {
  std::vector<Rational> terms;
  RunStatus status = RunStatus::ok;
  /// Index of the zero divisor (degenerate) or the first fractional term (non_integral).
  std::optional<std::size_t> flagged_index;
  std::vector<Rational> seed_window;
  BilinearRecurrence recurrence;
};

/// Iterates the relation solved for its top term. `init` defaults to
/// window() ones. Throws std::invalid_argument when count < window() or the
/// seed has the wrong length; throws UnsolvableError for unsolvable relations.
SequenceRun generate(const BilinearRecurrence& rec, std::size_t count,
                     const std::optional<std::vector<Rational>>& init = std::nullopt);

/// {"terms": ["1", ...], "status": "ok", "recurrence": {...}} (+ "flagged_index" when set).
nlohmann::json run_to_json(const SequenceRun& run);

/// Permutation sigma of {0..s-1}; image[i] = sigma(i).
class Permutation {
 public:
  /// Throws std::invalid_argument unless `image` is a bijection of {0..s-1}.
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int s);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }
  Permutation inverse() const;

  /// sigma(n): component alpha of n moves to position sigma(alpha).
  ChargeVector act(const ChargeVector& n) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// Sum of n_alpha n_beta over inversions alpha < beta, sigma(alpha) > sigma(beta).
long long q_sigma(const Permutation& sigma, const ChargeVector& n);

using TauTable = std::map<ChargeVector, Rational>;

/// tau'(n) = (-1)^{q_sigma(n)} tau(sigma(n)) for every n whose image is in the table.
TauTable act_permutation(const Permutation& sigma, const TauTable& table);

}  // namespace tauseq
