#include "tauseq/verify.hpp"

#include "tauseq/combinatorics.hpp"
#include "tauseq/fock.hpp"
#include "tauseq/plucker.hpp"
#include "tauseq/poly.hpp"
#include "tauseq/recurrence.hpp"

#include <algorithm>
#include <random>

namespace tauseq {

using nlohmann::json;

namespace {

json report(const std::string& check, int trials, int failures, const json& first, std::uint64_t seed) {
  return {{"check", check}, {"trials", trials}, {"failures", failures}, {"first_failure", first}, {"seed", seed}};
}

std::vector<ChargeVector> degree_zero_box(int s, int bound) {
  std::vector<ChargeVector> out;
  ChargeVector n(s, -bound);
  for (;;) {
    if (degree(n) == 0) out.push_back(n);
    int i = 0;
    while (i < s && n[i] == bound) n[i++] = -bound;
    if (i == s) return out;
    ++n[i];
  }
}

}  // namespace

VerifyOptions VerifyOptions::resolved() const {
  VerifyOptions a = *this;
  if (a.trials < 0) a.trials = check == "permutation" ? 20 : 100;
  if (a.cutoff < 0) a.cutoff = check == "states" ? 6 : 4;
  if (a.dim < 0) a.dim = check == "plucker4" ? 9 : 8;
  return a;
}

json VerifyOptions::to_json() const {
  return {{"check", check}, {"trials", trials}, {"cutoff", cutoff}, {"max_weight", max_weight}, {"dim", dim}};
}

json run_verify(const VerifyOptions& a, std::uint64_t seed) {
  const std::string& c = a.check;
  std::mt19937_64 rng(seed);
  json first = nullptr;
  int failures = 0;
  auto fail = [&](json detail) {
    if (failures++ == 0) first = std::move(detail);
  };

  if (c == "plucker") {
    const int trials = a.trials < 0 ? 100 : a.trials, dim = a.dim < 0 ? 8 : a.dim;
    for (int i = 0; i < trials; ++i) {
      const auto r = plucker3_check(dim, seed + i);
      if (r.residual != 0) fail({{"trial", i}, {"residual", r.residual.get_str()}});
    }
    auto doc = report(c, trials, failures, first, seed);
    doc["dim"] = dim;
    return doc;
  }
  if (c == "plucker4") {
    const int trials = a.trials < 0 ? 100 : a.trials, dim = a.dim < 0 ? 9 : a.dim;
    int verbatim_failures = 0;
    json verbatim_first = nullptr;
    for (int i = 0; i < trials; ++i) {
      const auto r = plucker4_check(dim, seed + i);
      if (r.symmetric_residual != 0) fail({{"trial", i}, {"residual", r.symmetric_residual.get_str()}});
      if (r.verbatim_residual != 0 && verbatim_failures++ == 0)
        verbatim_first = {{"trial", i}, {"residual", r.verbatim_residual.get_str()}};
    }
    auto doc = report(c, trials, failures, first, seed);
    doc["dim"] = dim;
    doc["reading"] = "symmetric";
    doc["verbatim"] = {{"failures", verbatim_failures}, {"first_failure", verbatim_first}};
    return doc;
  }
  if (c == "states") {
    const int cutoff = a.cutoff < 0 ? 6 : a.cutoff;
    const auto results = verify_state_identities(cutoff);
    json identities = json::array();
    const Window w(cutoff, 1);
    for (const auto& r : results) {
      identities.push_back({{"polynomial", r.polynomial},
                            {"expected_state", r.expected_state},
                            {"printed_state", r.printed_state},
                            {"holds", r.holds},
                            {"printed_form_holds", r.printed_form_holds}});
      if (!r.holds) fail({{"polynomial", r.polynomial}, {"difference", r.difference.to_string(w)}});
    }
    auto doc = report(c, static_cast<int>(results.size()), failures, first, seed);
    doc["cutoff"] = cutoff;
    doc["identities"] = identities;
    return doc;
  }
  if (c == "octahedron") {
    const int trials = a.trials < 0 ? 100 : a.trials, cutoff = a.cutoff < 0 ? 4 : a.cutoff;
    const Window w(cutoff, 4);
    for (int i = 0; i < trials; ++i) {
      const auto g = GroupElement::random_integer(w, rng);
      const ChargeVector n = random_base_point(4, 1, rng);
      const Rational r = octahedron_check(g, n, {0, 1, 2, 3});
      if (r != 0) fail({{"trial", i}, {"base", n}, {"residual", r.get_str()}});
    }
    auto doc = report(c, trials, failures, first, seed);
    doc["cutoff"] = cutoff;
    return doc;
  }
  if (c == "kp") {
    int trials = 0;
    for (int n = 0; n <= a.max_weight; ++n)
      for (const auto& parts : partitions_of(n)) {
        ++trials;
        const auto r = kp_bilinear_residual(schur(parts, std::max(8, a.max_weight)));
        if (!r.is_zero()) fail({{"partition", parts}, {"residual", r.to_string()}});
      }
    const MultiPoly x = MultiPoly::variable(1, 8);
    const auto control = kp_bilinear_residual(MultiPoly::constant(1, 8) + pow(x, 4));
    const bool control_ok = control == MultiPoly::constant(24, 8) + pow(x, 4) * Rational(72);
    if (!control_ok) fail({{"negative_control", control.to_string()}});
    auto doc = report(c, trials, failures, first, seed);
    doc["max_weight"] = a.max_weight;
    doc["negative_control"] = control.to_string();
    return doc;
  }
  if (c == "permutation") {
    const int tables = a.trials < 0 ? 20 : a.trials, cutoff = a.cutoff < 0 ? 4 : a.cutoff;
    const Window w(cutoff, 4);
    const auto points = degree_zero_box(4, std::min(2, cutoff - 1));
    int trials = 0;
    for (int t = 0; t < tables; ++t) {
      const auto g = GroupElement::random_integer(w, rng);
      TauTable table;
      for (const auto& n : points) table[n] = tau_discrete(g, n);
      std::vector<int> image{0, 1, 2, 3};
      for (int k = 0; k < 5; ++k) {
        std::shuffle(image.begin(), image.end(), rng);
        const Permutation sigma(image);
        const TauTable moved = act_permutation(sigma, table);
        auto lookup = [&](const ChargeVector& m) {
          auto it = moved.find(m);
          if (it == moved.end()) throw WindowError("probe left the tau table");
          return it->second;
        };
        for (int p = 0; p < 100; ++p) {
          ++trials;
          const ChargeVector n = random_base_point(4, 1, rng);
          const Rational r = octahedron_residual(lookup, n, {0, 1, 2, 3});
          if (r != 0) fail({{"table", t}, {"sigma", image}, {"base", n}, {"residual", r.get_str()}});
        }
        if (act_permutation(sigma.inverse(), moved) != table)
          fail({{"table", t}, {"sigma", image}, {"inverse_roundtrip", false}});
      }
    }
    auto doc = report(c, trials, failures, first, seed);
    doc["tables"] = tables;
    return doc;
  }
  throw ParseError("unknown check '" + c + "'");
}

}  // namespace tauseq
