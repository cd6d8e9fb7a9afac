#include "tauseq/scan.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

namespace tauseq {

namespace {

using Edge = std::pair<int, int>;
using Quad = std::array<Edge, 4>;

long long cross(const Edge& u, const Edge& v) {
  return static_cast<long long>(u.first) * v.second - static_cast<long long>(u.second) * v.first;
}

bool smallest_rotation(const Quad& q) {
  for (int r = 1; r < 4; ++r) {
    Quad rot;
    for (int i = 0; i < 4; ++i) rot[i] = q[(i + r) % 4];
    if (rot < q) return false;
  }
  return true;
}

nlohmann::json basis_json(const SublatticeBasis& b) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto* row : {&b.a(), &b.b()}) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : *row) r.push_back(x.get_si());
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json terms_json(const std::vector<Rational>& terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms) out.push_back(t.get_str());
  return out;
}

// Outcome of one basis, computed independently of all others.
struct Unit {
  std::optional<std::string> skip;  // reason
  nlohmann::json skip_record;
  std::string key;
  std::vector<Rational> terms;
  nlohmann::json record;
  RunStatus status = RunStatus::ok;
  bool matched = false;
};

Unit process(const SublatticeBasis& basis, const ScanConfig& cfg, const StrippedDb* db) {
  Unit u;
  auto skipped = [&](const std::string& reason, const std::string& detail) {
    u.skip = reason;
    u.skip_record = {{"basis", basis_json(basis)}, {"skip", reason}, {"detail", detail}};
  };
  Derivation d{QuotientMap{}, {}, {}, BilinearRecurrence({}, {1, -1, 1}), BilinearRecurrence({}, {1, -1, 1})};
  try {
    d = derive_recurrence(basis);
  } catch (const TorsionError& e) {
    skipped("torsion", e.what());
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : e.factors()) f.push_back(x.get_str());
    u.skip_record["invariant_factors"] = f;
    return u;
  } catch (const RankError& e) {
    skipped("rank", e.what());
    return u;
  } catch (const UnsolvableError& e) {
    skipped("unsolvable", e.what());
    return u;
  }
  const auto& rec = d.recurrence;
  // Every record carries at least min_match_terms terms past the seed window.
  const std::size_t count =
      std::max<std::size_t>(cfg.terms, static_cast<std::size_t>(rec.window()) + cfg.policy.min_match_terms);
  const SequenceRun run = generate(rec, count);
  u.key = rec.key();
  u.terms = run.terms;
  u.status = run.status;

  nlohmann::json matches = nlohmann::json::array();
  if (db && run.status == RunStatus::ok) {
    std::vector<Integer> ints;
    for (const auto& t : run.terms) ints.push_back(t.get_num());
    try {
      for (const auto& m : match_sequence(*db, ints, cfg.policy))
        matches.push_back({{"anumber", m.anumber}, {"position", m.position}});
    } catch (const QueryTooShort&) {
    }
  }
  u.matched = !matches.empty();

  IntVector w = d.quotient.w;
  nlohmann::json wj = nlohmann::json::array();
  for (const auto& x : w) wj.push_back(x.get_str());
  u.record = {{"key", u.key},
              {"basis", basis_json(basis)},
              {"quotient", {{"w", wj}, {"step", d.quotient.step.get_str()}}},
              {"recurrence", recurrence_to_json(rec)},
              {"equation", rec.equation()},
              {"status", to_string(run.status)},
              {"terms", terms_json(run.terms)},
              {"matches", matches}};
  if (run.flagged_index) u.record["flagged_index"] = *run.flagged_index;
  return u;
}

}  // namespace

void ScanConfig::validate() const {
  if (bound < 1) throw std::invalid_argument("scan bound must be at least 1");
  if (edges != 4) throw std::invalid_argument("only 4-edge polygons can be scanned");
  if (terms < 16) throw std::invalid_argument("scan needs at least 16 terms per sequence");
  if (policy.min_match_terms < 4) throw std::invalid_argument("min_match_terms must be at least 4");
}

nlohmann::json ScanConfig::to_json() const {
  return {{"bound", bound},
          {"edges", edges},
          {"terms", terms},
          {"seed", seed},
          {"oeis", oeis_path},
          {"min_match_terms", policy.min_match_terms},
          {"trim_leading_ones", policy.trim_leading_ones},
          {"allow_offset", policy.allow_offset}};
}

std::vector<SublatticeBasis> enumerate_bases(const ScanConfig& cfg) {
  cfg.validate();
  const int B = cfg.bound;
  std::vector<Edge> vectors;
  for (int x = -B; x <= B; ++x)
    for (int y = -B; y <= B; ++y)
      if (x != 0 || y != 0) vectors.push_back({x, y});

  std::vector<SublatticeBasis> out;
  for (const auto& e0 : vectors)
    for (const auto& e1 : vectors) {
      if (cross(e0, e1) <= 0) continue;
      for (const auto& e2 : vectors) {
        if (cross(e1, e2) <= 0) continue;
        const Edge e3{-(e0.first + e1.first + e2.first), -(e0.second + e1.second + e2.second)};
        if (std::abs(e3.first) > B || std::abs(e3.second) > B) continue;
        if (cross(e2, e3) <= 0 || cross(e3, e0) <= 0) continue;
        const Quad q{e0, e1, e2, e3};
        if (!smallest_rotation(q)) continue;
        std::vector<Point2> pts;
        for (const auto& e : q) pts.push_back({Integer(e.first), Integer(e.second)});
        if (!is_strictly_convex_ccw(pts)) continue;
        out.push_back(polygon_to_basis(EdgePolygon::from_edges(pts)));
      }
    }
  return out;
}

ScanResult run_scan(const ScanConfig& cfg) {
  cfg.validate();
  std::optional<StrippedDb> db;
  if (!cfg.oeis_path.empty()) db = load_stripped_file(cfg.oeis_path);

  const auto bases = enumerate_bases(cfg);
  std::vector<Unit> units(bases.size());
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, bases.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < bases.size(); i = next++) units[i] = process(bases[i], cfg, db ? &*db : nullptr);
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Single writer: merge in enumeration order.
  struct Entry {
    Unit* unit;
    std::size_t multiplicity;
  };
  std::map<std::string, Entry> distinct;
  std::map<std::string, std::size_t> skipped{{"torsion", 0}, {"rank", 0}, {"unsolvable", 0}};
  std::vector<nlohmann::json> skip_records;
  std::size_t conflicts = 0;
  for (auto& u : units) {
    if (u.skip) {
      ++skipped[*u.skip];
      skip_records.push_back(u.skip_record);
      continue;
    }
    auto [it, fresh] = distinct.try_emplace(u.key, Entry{&u, 1});
    if (fresh) continue;
    ++it->second.multiplicity;
    const auto& kept = it->second.unit->terms;
    const std::size_t common = std::min(kept.size(), u.terms.size());
    if (!std::equal(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(common), u.terms.begin())) ++conflicts;
  }

  ScanResult result;
  std::size_t integral = 0, non_integral = 0, degenerate = 0, matched = 0;
  for (auto& [key, entry] : distinct) {
    auto record = entry.unit->record;
    record["multiplicity"] = entry.multiplicity;
    result.records.push_back(std::move(record));
    switch (entry.unit->status) {
      case RunStatus::ok: ++integral; break;
      case RunStatus::non_integral: ++non_integral; break;
      case RunStatus::degenerate: ++degenerate; break;
    }
    matched += entry.unit->matched;
  }
  for (auto& r : skip_records) result.records.push_back(std::move(r));

  result.summary = {{"total", bases.size()},
                    {"skipped", skipped},
                    {"sequences", distinct.size()},
                    {"duplicates", bases.size() - skip_records.size() - distinct.size()},
                    {"integral", integral},
                    {"non_integral", non_integral},
                    {"degenerate", degenerate},
                    {"matched", matched},
                    {"unmatched", distinct.size() - matched},
                    {"dedup_conflicts", conflicts},
                    {"config", cfg.to_json()}};
  return result;
}

std::string to_jsonl(const ScanResult& result) {
  std::string out;
  for (const auto& r : result.records) out += r.dump() + "\n";
  return out;
}

void write_scan(const ScanResult& result, const std::string& output_path) {
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw Error("failed writing '" + path + "'");
  };
  write(output_path, to_jsonl(result));
  write(output_path + ".summary.json", result.summary.dump(2) + "\n");
}

}  // namespace tauseq
