#pragma once

// Truncated multi-component fermionic Fock space.
//
// A window of cutoff K keeps the sites -K .. K-1 (half-integer positions
// -K+1/2 .. K-1/2) of each of s components. Slots are numbered in the
// global wedge order: component ascending, then position descending, so
// slot 0 is the highest position of the first component. A basis wedge is
// the increasing list of its occupied slots; every sign in this module
// comes from sorting into that order.

#include "tauseq/arith.hpp"
#include "tauseq/poly.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tauseq {

class WindowError : public Error {
 public:
  using Error::Error;
};

class Window {
 public:
  /// Throws WindowError unless cutoff >= 2 and components >= 1.
  Window(int cutoff, int components);

  int cutoff() const { return cutoff_; }
  int components() const { return components_; }
  int slots_per_component() const { return 2 * cutoff_; }
  int slots() const { return 2 * cutoff_ * components_; }

  bool contains_site(int site) const { return site >= -cutoff_ && site < cutoff_; }

  /// Throws WindowError when the component or site lies outside the window.
  int slot(int component, int site) const;
  int component_of(int slot) const { return slot / slots_per_component(); }
  int site_of(int slot) const { return cutoff_ - 1 - slot % slots_per_component(); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int cutoff_;
  int components_;
};

/// Strictly increasing list of occupied slots.
using Wedge = std::vector<int>;

class FockVector {
 public:
  FockVector() = default;
  static FockVector basis(Wedge wedge, const Rational& coeff = 1);

  const std::map<Wedge, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Wedge& wedge) const;

  void add(const Wedge& wedge, const Rational& coeff);

  FockVector& operator+=(const FockVector& rhs);
  FockVector& operator-=(const FockVector& rhs);
  FockVector& operator*=(const Rational& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& c, FockVector v) { return v *= c; }

  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// Human-readable rendering, e.g. "1·[c0:1/2 c0:-3/2]".
  std::string to_string(const Window& window) const;

 private:
  std::map<Wedge, Rational> terms_;
};

/// The wedge v_{x1} v_{x2} ... of (component, site) factors in the given
/// order, sorted into canonical order with the sign of the sorting permutation.
/// A repeated factor gives the zero vector.
FockVector wedge_state(const Window& window, const std::vector<std::pair<int, int>>& factors);

using ChargeVector = std::vector<int>;

int degree(const ChargeVector& n);

/// Charge vectors used as states need |n_c| <= K - 1; base points that
/// receive a psi insertion need |n_c| <= K - 2.
void check_state_headroom(const ChargeVector& n, const Window& window);
void check_insertion_headroom(const ChargeVector& n, const Window& window);

/// Component c occupies exactly the sites below n_c (inside the window).
Wedge vacuum(const ChargeVector& n, const Window& window);

FockVector apply_psi(const Window& window, int component, int site, const FockVector& v);
FockVector apply_psi_star(const Window& window, int component, int site, const FockVector& v);

/// p_k = sum_i psi_{i+k} psi*_i on one component, dropping terms that leave the window.
FockVector apply_p(const Window& window, int component, int k, const FockVector& v);

/// Normal-ordered charge sum_{i>0} psi_i psi*_i - sum_{i<0} psi*_i psi_i over the window.
FockVector apply_charge(const Window& window, int component, const FockVector& v);

/// Applies a polynomial in p_1..p_m (the variables of `poly`) to v.
FockVector apply_boson_polynomial(const Window& window, int component, const MultiPoly& poly, const FockVector& v);

struct StateIdentityResult {
  std::string polynomial;      ///< bosonic polynomial, variables t_k standing for p_k
  Partition partition;         ///< partition whose Maya diagram is the expected wedge
  std::string expected_state;  ///< wedge the operator algebra must reproduce
  std::string printed_state;   ///< wedge listed next to the polynomial in the source table
  bool holds = false;
  bool printed_form_holds = false;
  FockVector difference;       ///< computed state minus expected state
};

/// Checks the six low-degree boson/fermion state identities on a single
/// component window of the given cutoff. Throws WindowError when cutoff < 6.
std::vector<StateIdentityResult> verify_state_identities(int cutoff);

/// Invertible matrix acting on the window's one-particle space.
class GroupElement {
 public:
  /// Throws std::invalid_argument on a size mismatch or a singular matrix.
  GroupElement(Window window, RationalMatrix matrix);

  /// Entries uniform in [lo, hi], resampled until invertible.
  static GroupElement random_integer(const Window& window, std::mt19937_64& rng, int lo = -3, int hi = 3);

  const Window& window() const { return window_; }
  const RationalMatrix& matrix() const { return matrix_; }

  /// <g|w>: the minor with rows = neutral vacuum slots and columns = w's slots.
  /// Wedges outside the neutral sector pair to zero.
  Rational pair(const Wedge& wedge) const;
  Rational pair(const FockVector& v) const;

 private:
  Window window_;
  RationalMatrix matrix_;
  Wedge neutral_rows_;
};

/// tau(n) = <g|n> for deg(n) = 0. Throws DegreeError or WindowError.
Rational tau_discrete(const GroupElement& g, const ChargeVector& n);

struct Insertion {
  Rational value;  ///< <g| v_{alpha, n_alpha+1/2} v_{beta, n_beta+1/2} |n>
  int parity = 0;  ///< value = (-1)^parity * tau(n + e^alpha + e^beta)
};

/// Requires alpha < beta and deg(n) = -2. Components are 0-based.
Insertion tau_with_insertions(const GroupElement& g, const ChargeVector& n, int alpha, int beta);

using Quadruple = std::array<int, 4>;

/// Residual of f(ab) f(cd) - f(ac) f(bd) + f(ad) f(bc) at the six points
/// n + e^x + e^y of the octahedron around n.
Rational octahedron_residual(const std::function<Rational(const ChargeVector&)>& tau, const ChargeVector& n,
                             const Quadruple& quad);

/// The octahedral residual with each factor computed via tau_with_insertions.
Rational octahedron_check(const GroupElement& g, const ChargeVector& n, const Quadruple& quad);

/// Random degree -2 charge vector with entries in [-bound, bound].
ChargeVector random_base_point(int components, int bound, std::mt19937_64& rng);

}  // namespace tauseq
