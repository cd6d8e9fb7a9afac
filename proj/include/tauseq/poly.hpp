#pragma once

// Sparse multivariate polynomials over Q in the times t1..tm, Schur
// polynomials, and the bilinear KP residual.

#include "tauseq/arith.hpp"
#include "tauseq/combinatorics.hpp"

#include <map>
#include <string>
#include <vector>

namespace tauseq {

using Exponents = std::vector<int>;

/// Polynomial in variables t1..tm. Variables are numbered from 1 so that
/// t1 = x, t2 = y, t3 = t in the KP reading. Zero coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(int num_vars = 0);

  static MultiPoly constant(const Rational& c, int num_vars);
  /// The variable t_k (1 <= k <= num_vars).
  static MultiPoly variable(int k, int num_vars);
  static MultiPoly monomial(const Rational& c, Exponents exps);

  int num_vars() const { return num_vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  /// Coefficient of the given monomial (zero when absent).
  Rational coefficient(const Exponents& exps) const;

  void add_term(const Exponents& exps, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator*(MultiPoly lhs, const Rational& c) { return lhs *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly rhs) { return rhs *= c; }
  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
  MultiPoly operator-() const { return *this * Rational(-1); }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  /// Substitutes t_k -> scale[k-1] * t_k.
  MultiPoly rescale_variables(const std::vector<Rational>& scale) const;

  /// Renders as e.g. "24 + 72·t1^4" or "1/2·t1^2 - t2": terms by ascending
  /// total degree, then by descending exponent vector.
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& rhs) const;

  int num_vars_;
  std::map<Exponents, Rational> terms_;
};

MultiPoly pow(const MultiPoly& base, int exponent);

/// Exact partial derivative d^order / d t_var^order.
MultiPoly diff(const MultiPoly& p, int var, int order = 1);

/// h_0..h_max_n, the complete homogeneous polynomials defined by
/// sum_n h_n z^n = exp(sum_{k<=m} t_k z^k).
std::vector<MultiPoly> h_series(int max_n, int num_vars);

/// Jacobi-Trudi determinant det(h_{parts[i] - i + j}). Requires num_vars >= |parts|.
MultiPoly schur(const Partition& parts, int num_vars);

/// tau*tau_1111 - 4 tau_111 tau_1 + 3 tau_11^2 - 4 (tau tau_13 - tau_1 tau_3)
///   + 3 (tau tau_22 - tau_2^2).
/// Throws std::invalid_argument for polynomials in fewer than three variables.
MultiPoly kp_bilinear_residual(const MultiPoly& tau);

}  // namespace tauseq
