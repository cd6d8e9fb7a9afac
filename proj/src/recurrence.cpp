#include "tauseq/recurrence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tauseq {

namespace {

OffsetPair ordered(OffsetPair p) {
  if (p.hi < p.lo) std::swap(p.hi, p.lo);
  return p;
}

bool spread_less(const OffsetPair& a, const OffsetPair& b) {
  const long long sa = a.hi - a.lo, sb = b.hi - b.lo;
  if (sa != sb) return sa < sb;
  return a.hi < b.hi;
}

// Orders pairs and signs into the canonical arrangement without translating.
std::pair<std::array<OffsetPair, 3>, std::array<int, 3>> arrange(std::array<OffsetPair, 3> pairs,
                                                                 std::array<int, 3> signs) {
  for (auto& p : pairs) p = ordered(p);
  const int plus = static_cast<int>(std::count(signs.begin(), signs.end(), 1));
  if (plus == 0 || plus == 3) {
    std::sort(pairs.begin(), pairs.end(), spread_less);
    return {pairs, {1, 1, 1}};
  }
  // Negate globally so exactly one sign is -1, then put that pair in the middle.
  const int odd_sign = plus == 1 ? 1 : -1;
  std::size_t odd = 0;
  while (signs[odd] != odd_sign) ++odd;
  std::array<OffsetPair, 2> outer;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != odd) outer[k++] = pairs[i];
  if (spread_less(outer[1], outer[0])) std::swap(outer[0], outer[1]);
  return {{outer[0], pairs[odd], outer[1]}, {1, -1, 1}};
}

std::string offset_term(long long k) {
  if (k == 0) return "T(l)";
  std::ostringstream out;
  out << "T(l" << (k > 0 ? "+" : "-") << std::llabs(k) << ")";
  return out.str();
}

}  // namespace

BilinearRecurrence::BilinearRecurrence(std::array<OffsetPair, 3> pairs, std::array<int, 3> signs)
    : pairs_(pairs), signs_(signs) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("recurrence signs must be +1 or -1");
}

long long BilinearRecurrence::min_offset() const {
  long long m = pairs_[0].lo;
  for (const auto& p : pairs_) m = std::min({m, p.hi, p.lo});
  return m;
}

long long BilinearRecurrence::max_offset() const {
  long long m = pairs_[0].hi;
  for (const auto& p : pairs_) m = std::max({m, p.hi, p.lo});
  return m;
}

long long BilinearRecurrence::window() const { return max_offset() - min_offset(); }

BilinearRecurrence BilinearRecurrence::translated(long long shift) const {
  auto pairs = pairs_;
  for (auto& p : pairs) {
    p.hi += shift;
    p.lo += shift;
  }
  return {pairs, signs_};
}

BilinearRecurrence BilinearRecurrence::reflected() const {
  auto pairs = pairs_;
  for (auto& p : pairs) p = {-p.lo, -p.hi};
  return {pairs, signs_};
}

BilinearRecurrence BilinearRecurrence::canonical() const {
  auto normalize = [](const BilinearRecurrence& r) {
    auto [pairs, signs] = arrange(r.pairs_, r.signs_);
    BilinearRecurrence out(pairs, signs);
    return out.translated(-out.min_offset());
  };
  const BilinearRecurrence direct = normalize(*this);
  const BilinearRecurrence mirror = normalize(reflected());
  if (mirror.pairs_ < direct.pairs_ || (mirror.pairs_ == direct.pairs_ && mirror.signs_ < direct.signs_))
    return mirror;
  return direct;
}

BilinearRecurrence BilinearRecurrence::display() const {
  const BilinearRecurrence c = canonical();
  const long long span = c.max_offset() + c.min_offset();
  if (span % 2 != 0) return c;
  return c.translated(-span / 2);
}

// Direction matters: a relation may be solvable for its top term while its
// reflection is not, so this inspects the relation as given.
void BilinearRecurrence::check_solvable() const {
  const BilinearRecurrence c(arrange(pairs_, signs_).first, arrange(pairs_, signs_).second);
  const long long top = c.max_offset();
  std::vector<std::size_t> holders;
  for (std::size_t i = 0; i < 3; ++i)
    if (c.pairs_[i].hi == top) holders.push_back(i);
  auto describe = [&](std::size_t i) {
    return "(" + std::to_string(c.pairs_[i].hi) + "," + std::to_string(c.pairs_[i].lo) + ")";
  };
  if (holders.size() > 1) {
    std::string msg = "degenerate recurrence: top offset " + std::to_string(top) + " occurs in pairs";
    for (auto i : holders) msg += " " + describe(i);
    throw UnsolvableError(msg);
  }
  if (c.pairs_[holders.front()].lo == top)
    throw UnsolvableError("degenerate recurrence: top term only appears squared in pair " + describe(holders.front()));
}

bool BilinearRecurrence::solvable() const {
  try {
    check_solvable();
    return true;
  } catch (const UnsolvableError&) {
    return false;
  }
}

std::string BilinearRecurrence::key() const {
  const BilinearRecurrence c = canonical();
  std::ostringstream out;
  for (std::size_t i = 0; i < 3; ++i)
    out << (c.signs_[i] > 0 ? '+' : '-') << '(' << c.pairs_[i].hi << ',' << c.pairs_[i].lo << ')';
  return out.str();
}

std::string BilinearRecurrence::equation() const {
  const BilinearRecurrence d = display();
  std::ostringstream out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == 0)
      out << (d.signs_[i] < 0 ? "-" : "");
    else
      out << (d.signs_[i] < 0 ? " - " : " + ");
    const auto& p = d.pairs_[i];
    if (p.hi == p.lo)
      out << offset_term(p.hi) << "^2";
    else
      out << offset_term(p.hi) << offset_term(p.lo);
  }
  out << " = 0";
  return out.str();
}

nlohmann::json quotient_to_json(const QuotientMap& q) {
  nlohmann::json w = nlohmann::json::array(), divisors = nlohmann::json::array();
  for (const auto& x : q.w) w.push_back(x.get_str());
  for (const auto& x : q.elementary_divisors) divisors.push_back(x.get_str());
  return {{"w", w}, {"step", q.step.get_str()}, {"torsion_free", q.torsion_free}, {"elementary_divisors", divisors}};
}

nlohmann::json derivation_to_json(const Derivation& d) {
  return {{"quotient", quotient_to_json(d.quotient)},
          {"recurrence", recurrence_to_json(d.recurrence)},
          {"key", d.recurrence.key()},
          {"equation", d.recurrence.equation()}};
}

nlohmann::json recurrence_to_json(const BilinearRecurrence& rec) {
  const BilinearRecurrence d = rec.display();
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : d.pairs()) pairs.push_back({p.hi, p.lo});
  return {{"pairs", pairs}, {"signs", d.signs()}, {"window", d.window()}};
}

BilinearRecurrence recurrence_from_json(const nlohmann::json& doc) {
  try {
    const auto& pairs = doc.at("pairs");
    if (!pairs.is_array() || pairs.size() != 3) throw ParseError("recurrence needs exactly three pairs");
    std::array<OffsetPair, 3> parsed;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw ParseError("each pair needs two offsets");
      parsed[i] = {pairs[i][0].get<long long>(), pairs[i][1].get<long long>()};
    }
    std::array<int, 3> signs{1, -1, 1};
    if (doc.contains("signs")) {
      const auto& s = doc.at("signs");
      if (!s.is_array() || s.size() != 3) throw ParseError("recurrence needs exactly three signs");
      for (std::size_t i = 0; i < 3; ++i) signs[i] = s[i].get<int>();
    }
    return BilinearRecurrence(parsed, signs);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed recurrence JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Derivation derive_recurrence(const SublatticeBasis& basis) {
  return derive_recurrence(basis, ChargeVector{0, 0, -1, -1});
}

Derivation derive_recurrence(const SublatticeBasis& basis, const ChargeVector& base) {
  if (basis.size() != 4) throw RankError("recurrences are compiled for s = 4 only");
  if (base.size() != 4 || degree(base) != -2) throw DegreeError("octahedron base point must have degree -2");
  Derivation d{quotient_map(basis), base, {}, BilinearRecurrence({}, {1, -1, 1}),
               BilinearRecurrence({}, {1, -1, 1})};
  auto vertex = [&](int x, int y) {
    ChargeVector p = base;
    ++p[x];
    ++p[y];
    return p;
  };
  auto index = [&](const ChargeVector& p) {
    IntVector v(p.begin(), p.end());
    return project(d.quotient, v).get_si();
  };
  const std::array<std::array<int, 4>, 3> products{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  std::array<OffsetPair, 3> pairs;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& [a, b, c, e] = products[i];
    d.points[i] = {vertex(a, b), vertex(c, e)};
    pairs[i] = {index(d.points[i][0]), index(d.points[i][1])};
  }
  d.raw = BilinearRecurrence(pairs, {1, -1, 1});
  d.recurrence = d.raw.canonical();
  d.recurrence.check_solvable();
  return d;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::ok:
      return "ok";
    case RunStatus::degenerate:
      return "degenerate";
    case RunStatus::non_integral:
      return "non-integral";
  }
  return "unknown";
}

SequenceRun generate(const BilinearRecurrence& rec, std::size_t count, const std::optional<std::vector<Rational>>& init) {
  rec.check_solvable();
  const BilinearRecurrence shifted = rec.translated(-rec.min_offset());
  const auto width = static_cast<std::size_t>(shifted.window());
  if (count < width) throw std::invalid_argument("count must be at least the window size " + std::to_string(width));

  SequenceRun run{{}, RunStatus::ok, std::nullopt, init.value_or(std::vector<Rational>(width, Rational(1))), rec};
  if (run.seed_window.size() != width)
    throw std::invalid_argument("seed window must have exactly " + std::to_string(width) + " terms");

  const auto top = static_cast<long long>(width);
  std::size_t top_pair = 0;
  while (shifted.pairs()[top_pair].hi != top && shifted.pairs()[top_pair].lo != top) ++top_pair;
  const OffsetPair tp = ordered(shifted.pairs()[top_pair]);

  auto& t = run.terms;
  t = run.seed_window;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!run.flagged_index && t[i].get_den() != 1) {
      run.status = RunStatus::non_integral;
      run.flagged_index = i;
    }
  for (std::size_t idx = width; idx < count; ++idx) {
    const std::size_t l = idx - width;
    Rational rest = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == top_pair) continue;
      const auto& p = shifted.pairs()[i];
      rest += shifted.signs()[i] * t[l + p.hi] * t[l + p.lo];
    }
    const Rational& partner = t[l + tp.lo];
    if (partner == 0) {
      run.status = RunStatus::degenerate;
      run.flagged_index = idx;
      break;
    }
    Rational next = -rest / (shifted.signs()[top_pair] * partner);
    if (next.get_den() != 1 && run.status == RunStatus::ok) {
      run.status = RunStatus::non_integral;
      run.flagged_index = idx;
    }
    t.push_back(std::move(next));
  }
  return run;
}

nlohmann::json run_to_json(const SequenceRun& run) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& x : run.terms) terms.push_back(x.get_str());
  nlohmann::json doc{{"terms", terms}, {"status", to_string(run.status)}, {"recurrence", recurrence_to_json(run.recurrence)}};
  if (run.flagged_index) doc["flagged_index"] = *run.flagged_index;
  return doc;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int x : image_) {
    if (x < 0 || x >= size() || seen[x]) throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int s) {
  std::vector<int> image(s);
  for (int i = 0; i < s; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

ChargeVector Permutation::act(const ChargeVector& n) const {
  if (static_cast<int>(n.size()) != size()) throw std::invalid_argument("permutation size mismatch");
  ChargeVector out(n.size());
  for (int a = 0; a < size(); ++a) out[image_[a]] = n[a];
  return out;
}

long long q_sigma(const Permutation& sigma, const ChargeVector& n) {
  if (static_cast<int>(n.size()) != sigma.size()) throw std::invalid_argument("permutation size mismatch");
  long long q = 0;
  for (int a = 0; a < sigma.size(); ++a)
    for (int b = a + 1; b < sigma.size(); ++b)
      if (sigma(a) > sigma(b)) q += static_cast<long long>(n[a]) * n[b];
  return q;
}

TauTable act_permutation(const Permutation& sigma, const TauTable& table) {
  const Permutation inv = sigma.inverse();
  TauTable out;
  for (const auto& [m, value] : table) {
    if (degree(m) != 0) throw DegreeError("tau table entries must have degree 0");
    const ChargeVector n = inv.act(m);
    const bool odd = (q_sigma(sigma, n) % 2) != 0;
    out.emplace(n, odd ? Rational(-value) : value);
  }
  return out;
}

}  // namespace tauseq
