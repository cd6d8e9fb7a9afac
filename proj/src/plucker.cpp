#include "tauseq/plucker.hpp"

#include <stdexcept>

namespace tauseq {

namespace {

constexpr int kMaxFrameAttempts = 64;

RationalMatrix columns(const std::vector<QVector>& cols, int dim) {
  RationalMatrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

QVector random_qvector(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  QVector v(dim);
  for (auto& x : v) {
    const int n = num(rng);  // sequenced: argument evaluation order is unspecified
    x = Rational(n, den(rng));
    x.canonicalize();
  }
  return v;
}

PluckerFrame random_plucker_frame(int dim, int codim, std::mt19937_64& rng) {
  if (codim < 1 || dim - codim < 2) throw std::invalid_argument("frame needs room for nonempty L and L'");
  std::uniform_int_distribution<int> split(1, dim - codim - 1);
  for (int attempt = 0; attempt < kMaxFrameAttempts; ++attempt) {
    PluckerFrame f;
    f.dim = dim;
    f.codim = codim;
    const int d = split(rng);
    for (int i = 0; i < d; ++i) f.co_span.push_back(random_qvector(dim, rng));
    for (int i = 0; i < dim - codim - d; ++i) f.span.push_back(random_qvector(dim, rng));
    std::vector<QVector> all = f.co_span;
    all.insert(all.end(), f.span.begin(), f.span.end());
    if (rank(columns(all, dim)) == all.size()) return f;
  }
  throw Error("could not draw a non-degenerate Plücker frame");
}

QVector random_in_frame(const PluckerFrame& frame, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  QVector v(frame.dim, Rational(0));
  auto accumulate = [&](const std::vector<QVector>& basis) {
    for (const auto& b : basis) {
      const Rational c = coeff(rng);
      for (int i = 0; i < frame.dim; ++i) v[i] += c * b[i];
    }
  };
  accumulate(frame.co_span);
  accumulate(frame.span);
  return v;
}

Rational bracket(const PluckerFrame& frame, const std::vector<QVector>& inserted) {
  if (static_cast<int>(inserted.size()) != frame.codim)
    throw std::invalid_argument("bracket needs exactly codim inserted vectors");
  std::vector<QVector> cols(frame.co_span.rbegin(), frame.co_span.rend());
  cols.insert(cols.end(), inserted.begin(), inserted.end());
  cols.insert(cols.end(), frame.span.begin(), frame.span.end());
  return determinant(columns(cols, frame.dim));
}

std::array<Rational, 3> plucker3_terms(const PluckerFrame& frame, const QVector& a, const QVector& b,
                                       const QVector& c, const QVector& d) {
  auto br = [&](const QVector& x, const QVector& y) { return bracket(frame, {x, y}); };
  return {br(a, b) * br(c, d), br(a, c) * br(b, d), br(a, d) * br(b, c)};
}

std::array<Rational, 4> plucker4_terms(const PluckerFrame& frame, Plucker4Reading reading,
                                       const std::array<QVector, 6>& v) {
  const auto& [a, b, c, x, y, z] = v;
  auto br = [&](const QVector& p, const QVector& q, const QVector& r) { return bracket(frame, {p, q, r}); };
  // The printed relation reuses `a` in the second and fourth products.
  const QVector& lead = reading == Plucker4Reading::verbatim ? a : c;
  return {br(a, b, c) * br(x, y, z), br(a, b, x) * br(lead, y, z), br(a, b, y) * br(c, x, z),
          br(a, b, z) * br(lead, x, y)};
}

Rational alternating_sum(const std::array<Rational, 3>& t) { return t[0] - t[1] + t[2]; }

Rational alternating_sum(const std::array<Rational, 4>& t) { return t[0] - t[1] + t[2] - t[3]; }

Plucker3Result plucker3_check(int dim, std::uint64_t seed) {
  if (dim < 6) throw std::invalid_argument("three-term Plücker check needs dim >= 6");
  std::mt19937_64 rng(seed);
  const PluckerFrame frame = random_plucker_frame(dim, 2, rng);
  const QVector a = random_qvector(dim, rng), b = random_qvector(dim, rng);
  const QVector c = random_qvector(dim, rng), d = random_qvector(dim, rng);
  Plucker3Result r;
  r.terms = plucker3_terms(frame, a, b, c, d);
  r.residual = alternating_sum(r.terms);
  r.co_span_dim = static_cast<int>(frame.co_span.size());
  return r;
}

Plucker4Result plucker4_check(int dim, std::uint64_t seed) {
  if (dim < 9) throw std::invalid_argument("four-term Plücker check needs dim >= 9");
  std::mt19937_64 rng(seed);
  const PluckerFrame frame = random_plucker_frame(dim, 3, rng);
  std::array<QVector, 6> v;
  for (auto& x : v) x = random_qvector(dim, rng);
  Plucker4Result r;
  r.verbatim_terms = plucker4_terms(frame, Plucker4Reading::verbatim, v);
  r.symmetric_terms = plucker4_terms(frame, Plucker4Reading::symmetric, v);
  r.verbatim_residual = alternating_sum(r.verbatim_terms);
  r.symmetric_residual = alternating_sum(r.symmetric_terms);
  r.co_span_dim = static_cast<int>(frame.co_span.size());
  return r;
}

}  // namespace tauseq
