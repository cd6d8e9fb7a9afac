#pragma once

// Brute-force checks of the three- and four-term Plücker relations on a
// finite-dimensional ambient space V = Q^dim.
//
// A frame is a pair of subspaces L (spanned by v_1, v_2, ...) and L'
// (spanned by w_1, w_2, ...) with L ∩ L' = 0 and dim V / (L ⊕ L') = codim.
// The bracket <L'| u_1 ... u_codim |L> is the determinant of the columns
// w_d, ..., w_1, u_1, ..., u_codim, v_1, v_2, ...

#include "tauseq/arith.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace tauseq {

using QVector = std::vector<Rational>;

struct PluckerFrame {
  int dim = 0;
  int codim = 0;
  std::vector<QVector> co_span;  ///< w_1 .. w_d spanning L'
  std::vector<QVector> span;     ///< v_1 .. spanning L
};

/// Draws random rational vectors (numerators in [-3,3], denominators in [1,3])
/// until L ⊕ L' has the requested codimension. Throws Error after a bounded
/// number of degenerate draws.
PluckerFrame random_plucker_frame(int dim, int codim, std::mt19937_64& rng);

QVector random_qvector(int dim, std::mt19937_64& rng);

/// A random element of L ⊕ L'.
QVector random_in_frame(const PluckerFrame& frame, std::mt19937_64& rng);

Rational bracket(const PluckerFrame& frame, const std::vector<QVector>& inserted);

/// <ab><cd> - <ac><bd> + <ad><bc>
std::array<Rational, 3> plucker3_terms(const PluckerFrame& frame, const QVector& a, const QVector& b,
                                       const QVector& c, const QVector& d);

enum class Plucker4Reading {
  verbatim,   ///< <abc><xyz> - <abx><ayz> + <aby><cxz> - <abz><axy>, exactly as printed
  symmetric,  ///< <abc><xyz> - <abx><cyz> + <aby><cxz> - <abz><cxy>
};

std::array<Rational, 4> plucker4_terms(const PluckerFrame& frame, Plucker4Reading reading,
                                       const std::array<QVector, 6>& abcxyz);

Rational alternating_sum(const std::array<Rational, 3>& terms);
Rational alternating_sum(const std::array<Rational, 4>& terms);

struct Plucker3Result {
  Rational residual;
  std::array<Rational, 3> terms;
  int co_span_dim = 0;
};

/// One seeded trial of the three-term relation. Requires dim >= 6.
Plucker3Result plucker3_check(int dim, std::uint64_t seed);

struct Plucker4Result {
  Rational verbatim_residual;
  Rational symmetric_residual;
  std::array<Rational, 4> verbatim_terms;
  std::array<Rational, 4> symmetric_terms;
  int co_span_dim = 0;
};

/// One seeded trial of the four-term relation under both readings. Requires dim >= 9.
Plucker4Result plucker4_check(int dim, std::uint64_t seed);

}  // namespace tauseq
