#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tauseq/poly.hpp"

#include <random>

using namespace tauseq;

namespace {

MultiPoly t(int k, int m = 8) { return MultiPoly::variable(k, m); }
MultiPoly c(const Rational& x, int m = 8) { return MultiPoly::constant(x, m); }

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficient of z^n in exp(sum t_k z^k): sum over partitions of n with
// multiplicities m_k of prod t_k^{m_k} / m_k!.
MultiPoly exp_coefficient(int n, int m) {
  MultiPoly out(m);
  for (const auto& parts : partitions_of(n)) {
    Exponents e(m, 0);
    bool fits = true;
    for (int p : parts) {
      if (p > m) fits = false;
      else ++e[p - 1];
    }
    if (!fits) continue;
    Integer den = 1;
    for (int x : e) den *= factorial(x);
    out.add_term(e, Rational(Integer(1), den));
  }
  return out;
}

MultiPoly random_poly(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> coef(-4, 4), exp(0, 2), count(0, 5);
  MultiPoly p(m);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Exponents e(m);
    for (auto& x : e) x = exp(rng);
    Rational x(coef(rng), 1 + (i % 3));
    x.canonicalize();
    p.add_term(e, x);
  }
  return p;
}

}  // namespace

TEST_CASE("h series small cases") {
  const auto h = h_series(4, 4);
  CHECK(h[0] == c(1, 4));
  CHECK(h[1] == t(1, 4));
  CHECK(h[2] == t(1, 4) * t(1, 4) * Rational(1, 2) + t(2, 4));
  CHECK(h[4].coefficient({4, 0, 0, 0}) == Rational(1, 24));
  CHECK(h[4].coefficient({0, 0, 0, 1}) == 1);
}

TEST_CASE("h series matches the truncated exponential") {
  for (int m = 1; m <= 8; ++m) {
    const auto h = h_series(8, m);
    for (int n = 0; n <= 8; ++n) CHECK(h[n] == exp_coefficient(n, m));
  }
}

TEST_CASE("schur polynomials") {
  CHECK(schur({}, 8) == c(1));
  CHECK(schur({2}, 8) == t(1) * t(1) * Rational(1, 2) + t(2));
  CHECK(schur({1, 1}, 8) == t(1) * t(1) * Rational(1, 2) - t(2));
  // After p_k = k t_k the (2,2) polynomial is (1/12)(p1^4 + 3 p2^2 - 4 p1 p3).
  const auto s22 = schur({2, 2}, 8).rescale_variables({1, Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5),
                                                        Rational(1, 6), Rational(1, 7), Rational(1, 8)});
  const auto expected = (pow(t(1), 4) + t(2) * t(2) * Rational(3) - t(1) * t(3) * Rational(4)) * Rational(1, 12);
  CHECK(s22 == expected);
  CHECK(schur({2, 2}, 8).coefficient({4, 0, 0, 0, 0, 0, 0, 0}) == Rational(1, 12));
  CHECK_THROWS_AS(schur({3}, 2), std::invalid_argument);
}

TEST_CASE("derivatives") {
  CHECK(diff(t(1) * t(1), 1) == t(1) * Rational(2));
  CHECK(diff(c(5), 3).is_zero());
  CHECK(diff(pow(t(2), 3), 2, 2) == t(2) * Rational(6));
  CHECK(diff(t(1), 1, 0) == t(1));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, 4);
    const int i = 1 + trial % 4, j = 1 + (trial / 4) % 4;
    CHECK(diff(diff(p, i), j) == diff(diff(p, j), i));
  }
  CHECK_THROWS_AS(diff(t(1), 9), std::out_of_range);
  CHECK_THROWS_AS(diff(t(1), 1, -1), std::invalid_argument);
}

TEST_CASE("ring axioms") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly(rng, 3), b = random_poly(rng, 3), d = random_poly(rng, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a - a).is_zero());
    const auto prod = a * b;
    for (const auto& [e, x] : prod.terms()) CHECK(x != 0);
  }
}

TEST_CASE("kp residual") {
  CHECK(kp_bilinear_residual(c(1)).is_zero());
  const auto neg = kp_bilinear_residual(c(1) + pow(t(1), 4));
  CHECK(neg == c(24) + pow(t(1), 4) * Rational(72));
  CHECK(neg.to_string() == "24 + 72·t1^4");
  int count = 0;
  for (int n = 0; n <= 6; ++n)
    for (const auto& parts : partitions_of(n)) {
      CHECK(kp_bilinear_residual(schur(parts, 8)).is_zero());
      ++count;
    }
  CHECK(count == 30);
  CHECK_THROWS_AS(kp_bilinear_residual(MultiPoly::variable(1, 2)), std::invalid_argument);
}

TEST_CASE("kp residual is quadratic in tau") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_poly(rng, 3);
    CHECK(kp_bilinear_residual(p * Rational(3, 2)) == kp_bilinear_residual(p) * Rational(9, 4));
  }
  const auto s = schur({3, 1}, 8);
  CHECK(kp_bilinear_residual(s * Rational(3, 2)).is_zero());
}

TEST_CASE("rendering") {
  CHECK(c(0).to_string() == "0");
  CHECK((t(1, 3) * t(1, 3) * Rational(3, 2) * t(3, 3)).to_string() == "3/2·t1^2·t3");
  CHECK((t(1, 2) * t(1, 2) * Rational(1, 2) - t(2, 2)).to_string() == "-t2 + 1/2·t1^2");
}
