#include "tauseq/fock.hpp"

#include "tauseq/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tauseq {

Window::Window(int cutoff, int components) : cutoff_(cutoff), components_(components) {
  if (cutoff < 2) throw WindowError("window cutoff must be at least 2");
  if (components < 1) throw WindowError("window needs at least one component");
}

int Window::slot(int component, int site) const {
  if (component < 0 || component >= components_) throw WindowError("component outside the window");
  if (!contains_site(site)) throw WindowError("site " + half_integer_string(site) + " outside the window");
  return component * slots_per_component() + (cutoff_ - 1 - site);
}

FockVector FockVector::basis(Wedge wedge, const Rational& coeff) {
  FockVector v;
  v.add(wedge, coeff);
  return v;
}

Rational FockVector::coefficient(const Wedge& wedge) const {
  auto it = terms_.find(wedge);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FockVector::add(const Wedge& wedge, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(wedge, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& rhs) {
  for (const auto& [w, c] : rhs.terms_) add(w, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& rhs) {
  for (const auto& [w, c] : rhs.terms_) add(w, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

std::string FockVector::to_string(const Window& window) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.get_str() << "·[";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out << ' ';
      out << 'c' << window.component_of(w[i]) << ':' << half_integer_string(window.site_of(w[i]));
    }
    out << ']';
  }
  return out.str();
}

FockVector wedge_state(const Window& window, const std::vector<std::pair<int, int>>& factors) {
  std::vector<int> slots;
  slots.reserve(factors.size());
  for (auto [c, site] : factors) slots.push_back(window.slot(c, site));
  // Sign of the sorting permutation by counting inversions.
  int inversions = 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[i] == slots[j]) return {};
      if (slots[i] > slots[j]) ++inversions;
    }
  std::sort(slots.begin(), slots.end());
  return FockVector::basis(std::move(slots), inversions % 2 ? -1 : 1);
}

int degree(const ChargeVector& n) { return std::accumulate(n.begin(), n.end(), 0); }

namespace {

void check_components(const ChargeVector& n, const Window& window) {
  if (static_cast<int>(n.size()) != window.components())
    throw WindowError("charge vector has " + std::to_string(n.size()) + " entries, window has " +
                      std::to_string(window.components()) + " components");
}

void check_bound(const ChargeVector& n, const Window& window, int bound) {
  check_components(n, window);
  for (int x : n)
    if (std::abs(x) > bound)
      throw WindowError("charge " + std::to_string(x) + " exceeds the headroom of cutoff " +
                        std::to_string(window.cutoff()));
}

int sign_of(int count) { return count % 2 ? -1 : 1; }

}  // namespace

void check_state_headroom(const ChargeVector& n, const Window& window) {
  check_bound(n, window, window.cutoff() - 1);
}

void check_insertion_headroom(const ChargeVector& n, const Window& window) {
  check_bound(n, window, window.cutoff() - 2);
}

Wedge vacuum(const ChargeVector& n, const Window& window) {
  check_state_headroom(n, window);
  Wedge w;
  for (int c = 0; c < window.components(); ++c)
    for (int site = n[c] - 1; site >= -window.cutoff(); --site) w.push_back(window.slot(c, site));
  return w;
}

FockVector apply_psi(const Window& window, int component, int site, const FockVector& v) {
  const int x = window.slot(component, site);
  FockVector out;
  for (const auto& [w, c] : v.terms()) {
    auto pos = std::lower_bound(w.begin(), w.end(), x);
    if (pos != w.end() && *pos == x) continue;
    const int preceding = static_cast<int>(pos - w.begin());
    Wedge nw;
    nw.reserve(w.size() + 1);
    nw.insert(nw.end(), w.begin(), pos);
    nw.push_back(x);
    nw.insert(nw.end(), pos, w.end());
    out.add(nw, sign_of(preceding) * c);
  }
  return out;
}

FockVector apply_psi_star(const Window& window, int component, int site, const FockVector& v) {
  const int x = window.slot(component, site);
  FockVector out;
  for (const auto& [w, c] : v.terms()) {
    auto pos = std::lower_bound(w.begin(), w.end(), x);
    if (pos == w.end() || *pos != x) continue;
    const int preceding = static_cast<int>(pos - w.begin());
    Wedge nw;
    nw.reserve(w.size() - 1);
    nw.insert(nw.end(), w.begin(), pos);
    nw.insert(nw.end(), pos + 1, w.end());
    out.add(nw, sign_of(preceding) * c);
  }
  return out;
}

FockVector apply_p(const Window& window, int component, int k, const FockVector& v) {
  if (k == 0 || std::abs(k) > window.slots_per_component())
    throw std::invalid_argument("p_k needs 0 < |k| <= 2K");
  FockVector out;
  for (int site = -window.cutoff(); site < window.cutoff(); ++site) {
    if (!window.contains_site(site + k)) continue;
    out += apply_psi(window, component, site + k, apply_psi_star(window, component, site, v));
  }
  return out;
}

FockVector apply_charge(const Window& window, int component, const FockVector& v) {
  FockVector out;
  for (int site = -window.cutoff(); site < window.cutoff(); ++site) {
    if (site >= 0)
      out += apply_psi(window, component, site, apply_psi_star(window, component, site, v));
    else
      out -= apply_psi_star(window, component, site, apply_psi(window, component, site, v));
  }
  return out;
}

FockVector apply_boson_polynomial(const Window& window, int component, const MultiPoly& poly, const FockVector& v) {
  FockVector out;
  for (const auto& [exps, coeff] : poly.terms()) {
    FockVector term = v;
    for (std::size_t k = 0; k < exps.size(); ++k)
      for (int e = 0; e < exps[k]; ++e) term = apply_p(window, component, static_cast<int>(k) + 1, term);
    term *= coeff;
    out += term;
  }
  return out;
}

namespace {

struct IdentityCase {
  MultiPoly polynomial;
  Partition partition;
  std::array<int, 2> printed_sites;  // the two sites above |L> listed in the table
};

// |L> is the vacuum with sites -1 and -2 (positions -1/2, -3/2) emptied.
FockVector state_over_l(const Window& window, std::array<int, 2> top) {
  std::vector<std::pair<int, int>> factors{{0, top[0]}, {0, top[1]}};
  for (int site = -3; site >= -window.cutoff(); --site) factors.emplace_back(0, site);
  return wedge_state(window, factors);
}

std::string describe_over_l(std::array<int, 2> top) {
  return "v_{" + half_integer_string(top[0]) + "} v_{" + half_integer_string(top[1]) + "} |L>";
}

std::vector<IdentityCase> identity_specs() {
  const int m = 4;
  auto p = [m](int k) { return MultiPoly::variable(k, m); };
  auto one = MultiPoly::constant(1, m);
  std::vector<IdentityCase> specs;
  specs.push_back({one, {}, {-1, -2}});
  specs.push_back({p(1), {1}, {0, -2}});
  specs.push_back({(p(1) * p(1) + p(2)) * Rational(1, 2), {2}, {0, -1}});
  specs.push_back({(p(1) * p(1) - p(2)) * Rational(1, 2), {1, 1}, {1, -2}});
  specs.push_back({(pow(p(1), 3) - p(3)) * Rational(1, 3), {2, 1}, {1, -1}});
  specs.push_back(
      {(pow(p(1), 4) + p(2) * p(2) * Rational(3) - p(1) * p(3) * Rational(4)) * Rational(1, 12), {2, 2}, {1, 0}});
  return specs;
}

}  // namespace

std::vector<StateIdentityResult> verify_state_identities(int cutoff) {
  if (cutoff < 6) throw WindowError("state identities need a window cutoff of at least 6");
  const Window window(cutoff, 1);
  const FockVector ground = FockVector::basis(vacuum({0}, window));
  std::vector<StateIdentityResult> results;
  for (const auto& ident : identity_specs()) {
    const MayaDiagram maya = maya_from_young_charge(ident.partition, 0);
    const auto sites = maya.occupied_from(-2);  // the two occupied sites above |L>
    const std::array<int, 2> expected_top{sites.at(0), sites.at(1)};

    const FockVector computed = apply_boson_polynomial(window, 0, ident.polynomial, ground);
    const FockVector expected = state_over_l(window, expected_top);
    const FockVector printed = state_over_l(window, ident.printed_sites);

    StateIdentityResult r;
    r.polynomial = ident.polynomial.to_string();
    r.partition = ident.partition;
    r.expected_state = describe_over_l(expected_top);
    r.printed_state = describe_over_l(ident.printed_sites);
    r.difference = computed - expected;
    r.holds = r.difference.is_zero();
    r.printed_form_holds = computed == printed;
    results.push_back(std::move(r));
  }
  return results;
}

GroupElement::GroupElement(Window window, RationalMatrix matrix) : window_(window), matrix_(std::move(matrix)) {
  const auto n = static_cast<std::size_t>(window_.slots());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("group element must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  if (determinant(matrix_) == 0) throw std::invalid_argument("group element must be invertible");
  neutral_rows_ = vacuum(ChargeVector(window_.components(), 0), window_);
}

GroupElement GroupElement::random_integer(const Window& window, std::mt19937_64& rng, int lo, int hi) {
  const auto n = static_cast<std::size_t>(window.slots());
  std::uniform_int_distribution<int> dist(lo, hi);
  for (;;) {
    IntMatrix candidate(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) candidate(i, j) = dist(rng);
    if (determinant(candidate) == 0) continue;
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(candidate(i, j));
    return GroupElement(window, std::move(m));
  }
}

Rational GroupElement::pair(const Wedge& wedge) const {
  if (wedge.size() != neutral_rows_.size()) return 0;
  return minor(matrix_, neutral_rows_, wedge);
}

Rational GroupElement::pair(const FockVector& v) const {
  Rational total = 0;
  for (const auto& [w, c] : v.terms()) total += c * pair(w);
  return total;
}

Rational tau_discrete(const GroupElement& g, const ChargeVector& n) {
  check_components(n, g.window());
  if (degree(n) != 0) throw DegreeError("tau is defined on charge vectors of degree 0");
  return g.pair(vacuum(n, g.window()));
}

Insertion tau_with_insertions(const GroupElement& g, const ChargeVector& n, int alpha, int beta) {
  const Window& window = g.window();
  check_insertion_headroom(n, window);
  if (degree(n) != -2) throw DegreeError("insertion base point must have degree -2");
  if (!(0 <= alpha && alpha < beta && beta < window.components()))
    throw std::invalid_argument("insertion needs component indices alpha < beta");
  FockVector state = FockVector::basis(vacuum(n, window));
  state = apply_psi(window, beta, n[beta], state);
  state = apply_psi(window, alpha, n[alpha], state);

  ChargeVector shifted = n;
  ++shifted[alpha];
  ++shifted[beta];
  const Rational coeff = state.coefficient(vacuum(shifted, window));
  Insertion out;
  out.value = g.pair(state);
  out.parity = coeff < 0 ? 1 : 0;
  return out;
}

Rational octahedron_residual(const std::function<Rational(const ChargeVector&)>& tau, const ChargeVector& n,
                             const Quadruple& quad) {
  auto at = [&](int x, int y) {
    ChargeVector p = n;
    ++p[x];
    ++p[y];
    return tau(p);
  };
  const auto [a, b, c, d] = quad;
  return at(a, b) * at(c, d) - at(a, c) * at(b, d) + at(a, d) * at(b, c);
}

Rational octahedron_check(const GroupElement& g, const ChargeVector& n, const Quadruple& quad) {
  const auto [a, b, c, d] = quad;
  if (!(0 <= a && a < b && b < c && c < d && d < g.window().components()))
    throw std::invalid_argument("octahedron needs components alpha < beta < gamma < delta");
  auto ins = [&](int x, int y) { return tau_with_insertions(g, n, x, y).value; };
  return ins(a, b) * ins(c, d) - ins(a, c) * ins(b, d) + ins(a, d) * ins(b, c);
}

ChargeVector random_base_point(int components, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  ChargeVector n(components);
  for (;;) {
    for (int& x : n) x = dist(rng);
    if (degree(n) == -2) return n;
  }
}

}  // namespace tauseq
