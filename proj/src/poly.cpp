#include "tauseq/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tauseq {

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
}

MultiPoly MultiPoly::constant(const Rational& c, int num_vars) {
  MultiPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int k, int num_vars) {
  if (k < 1 || k > num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[k - 1] = 1;
  return monomial(1, std::move(e));
}

MultiPoly MultiPoly::monomial(const Rational& c, Exponents exps) {
  MultiPoly p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

int MultiPoly::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

Rational MultiPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != num_vars_) throw std::invalid_argument("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& rhs) const {
  if (rhs.num_vars_ != num_vars_) throw std::invalid_argument("polynomials over different variable sets");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
  lhs.check_compatible(rhs);
  MultiPoly out(lhs.num_vars_);
  Exponents e(lhs.num_vars_);
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < lhs.num_vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::rescale_variables(const std::vector<Rational>& scale) const {
  if (static_cast<int>(scale.size()) != num_vars_) throw std::invalid_argument("scale vector length mismatch");
  MultiPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Rational f = c;
    for (int i = 0; i < num_vars_; ++i)
      for (int k = 0; k < e[i]; ++k) f *= scale[i];
    out.add_term(e, f);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    bool wrote = false;
    if (mag != 1 || constant) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "·";
      out << "t" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
  }
  return out.str();
}

MultiPoly pow(const MultiPoly& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  MultiPoly result = MultiPoly::constant(1, base.num_vars());
  for (int i = 0; i < exponent; ++i) result = result * base;
  return result;
}

MultiPoly diff(const MultiPoly& p, int var, int order) {
  if (var < 1 || var > p.num_vars()) throw std::out_of_range("variable index out of range");
  if (order < 0) throw std::invalid_argument("negative derivative order");
  MultiPoly out(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    const int k = e[var - 1];
    if (k < order) continue;
    Rational f = c;
    for (int j = 0; j < order; ++j) f *= k - j;
    Exponents ne = e;
    ne[var - 1] -= order;
    out.add_term(ne, f);
  }
  return out;
}

std::vector<MultiPoly> h_series(int max_n, int num_vars) {
  if (num_vars < 1) throw std::invalid_argument("h_series needs at least one variable");
  std::vector<MultiPoly> h;
  h.reserve(std::max(max_n, 0) + 1);
  h.push_back(MultiPoly::constant(1, num_vars));
  // n h_n = sum_k k t_k h_{n-k}
  for (int n = 1; n <= max_n; ++n) {
    MultiPoly acc(num_vars);
    for (int k = 1; k <= std::min(n, num_vars); ++k)
      acc += MultiPoly::variable(k, num_vars) * h[n - k] * Rational(k);
    acc *= Rational(1, n);
    h.push_back(std::move(acc));
  }
  return h;
}

namespace {

// Laplace expansion along the first row; matrices here are at most a few rows.
MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m, int num_vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(1, num_vars);
  if (n == 1) return m[0][0];
  MultiPoly det(num_vars);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> sub;
    sub.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    MultiPoly term = m[0][col] * poly_determinant(sub, num_vars);
    if (col % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

}  // namespace

MultiPoly schur(const Partition& parts, int num_vars) {
  if (!is_partition(parts)) throw std::invalid_argument("not a partition");
  const int size = partition_size(parts);
  if (num_vars < std::max(size, 1)) throw std::invalid_argument("schur needs at least |lambda| variables");
  const auto h = h_series(size, num_vars);
  const std::size_t len = parts.size();
  std::vector<std::vector<MultiPoly>> jt(len, std::vector<MultiPoly>(len, MultiPoly(num_vars)));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      const int idx = parts[i] - static_cast<int>(i) + static_cast<int>(j);
      if (idx >= 0) jt[i][j] = h[idx];
    }
  }
  return poly_determinant(jt, num_vars);
}

MultiPoly kp_bilinear_residual(const MultiPoly& tau) {
  if (tau.num_vars() < 3) throw std::invalid_argument("KP residual needs the times t1, t2, t3");
  const MultiPoly t1 = diff(tau, 1);
  const MultiPoly t11 = diff(t1, 1);
  const MultiPoly t111 = diff(t11, 1);
  const MultiPoly t1111 = diff(t111, 1);
  const MultiPoly t2 = diff(tau, 2);
  const MultiPoly t22 = diff(t2, 2);
  const MultiPoly t3 = diff(tau, 3);
  const MultiPoly t13 = diff(t1, 3);
  MultiPoly r = tau * t1111 - t111 * t1 * Rational(4) + t11 * t11 * Rational(3);
  r -= (tau * t13 - t1 * t3) * Rational(4);
  r += (tau * t22 - t2 * t2) * Rational(3);
  return r;
}

}  // namespace tauseq
