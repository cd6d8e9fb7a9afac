#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tauseq/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <cmath>
#include <set>
#include <sstream>

using namespace tauseq;

namespace {

const std::string fixture = std::string(TAUSEQ_TEST_DATA_DIR) + "/oeis_fixture.txt";

const std::string key_one = derive_recurrence(parse_matrix("5,-2,-2,-1;1,1,-1,-1")).recurrence.key();
const std::string key_two = derive_recurrence(parse_matrix("1,3,-3,-1;0,1,2,-3")).recurrence.key();

const nlohmann::json* find_key(const ScanResult& r, const std::string& key) {
  for (const auto& rec : r.records)
    if (rec.contains("key") && rec["key"] == key) return &rec;
  return nullptr;
}

// Brute-force count of rotation classes of strictly convex quadrilaterals.
std::size_t brute_count(int B) {
  std::set<std::vector<std::pair<int, int>>> classes;
  std::vector<std::pair<int, int>> v;
  for (int x = -B; x <= B; ++x)
    for (int y = -B; y <= B; ++y)
      if (x || y) v.push_back({x, y});
  auto cr = [](auto u, auto w) { return u.first * w.second - u.second * w.first; };
  for (auto a : v)
    for (auto b : v)
      for (auto c : v)
        for (auto d : v) {
          if (a.first + b.first + c.first + d.first || a.second + b.second + c.second + d.second) continue;
          std::vector<std::pair<int, int>> q{a, b, c, d};
          bool ok = true;
          for (int i = 0; i < 4; ++i) ok = ok && cr(q[i], q[(i + 1) % 4]) > 0;
          if (!ok) continue;
          // total turning of exactly one revolution: angles increase with a single wrap
          int descents = 0;
          auto angle = [](auto e) { return std::atan2(double(e.second), double(e.first)); };
          for (int i = 0; i < 4; ++i) descents += angle(q[(i + 1) % 4]) < angle(q[i]);
          if (descents != 1) continue;
          auto best = q;
          for (int r = 1; r < 4; ++r) {
            std::rotate(q.begin(), q.begin() + 1, q.end());
            best = std::min(best, q);
          }
          classes.insert(best);
        }
  return classes.size();
}

}  // namespace

TEST_CASE("enumeration") {
  ScanConfig cfg;
  cfg.bound = 0;
  CHECK_THROWS_AS(enumerate_bases(cfg), std::invalid_argument);
  cfg.bound = 1;
  const auto b1 = enumerate_bases(cfg);
  CHECK(b1.size() == brute_count(1));
  CHECK(std::find(b1.begin(), b1.end(), parse_matrix("-1,0,1,0;0,-1,0,1")) != b1.end());
  cfg.bound = 2;
  CHECK(enumerate_bases(cfg).size() == brute_count(2));
  cfg.bound = 5;
  const auto b5 = enumerate_bases(cfg);
  CHECK(std::find(b5.begin(), b5.end(), parse_matrix("-2,-1,5,-2;-1,-1,1,1")) != b5.end());
  CHECK(std::is_sorted(b5.begin(), b5.end(), [](const SublatticeBasis& x, const SublatticeBasis& y) {
    for (int i = 0; i < 4; ++i) {
      if (x.a()[i] != y.a()[i]) return x.a()[i] < y.a()[i];
      if (x.b()[i] != y.b()[i]) return x.b()[i] < y.b()[i];
    }
    return false;
  }));
}

TEST_CASE("rotating the polygon keeps the recurrence") {
  CHECK(derive_recurrence(parse_matrix("-2,-1,5,-2;-1,-1,1,1")).recurrence.key() == key_one);
  CHECK(derive_recurrence(parse_matrix("3,-3,-1,1;1,2,-3,0")).recurrence.key() == key_two);
}

TEST_CASE("config validation") {
  ScanConfig cfg;
  cfg.terms = 15;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.terms = 16;
  cfg.edges = 5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.edges = 4;
  cfg.bound = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.bound = 1;
  CHECK_NOTHROW(cfg.validate());
  cfg.oeis_path = "/nonexistent";
  CHECK_THROWS_AS(run_scan(cfg), Error);
}

TEST_CASE("scan at bound 3 finds the second example unmatched") {
  ScanConfig cfg;
  cfg.bound = 3;
  cfg.oeis_path = fixture;
  const auto r = run_scan(cfg);
  const auto* rec = find_key(r, key_two);
  REQUIRE(rec);
  CHECK((*rec)["status"] == "ok");
  CHECK((*rec)["matches"].empty());
  CHECK((*rec)["terms"][23] == "490");
  const auto& s = r.summary;
  CHECK(s["total"].get<std::size_t>() ==
        s["skipped"]["torsion"].get<std::size_t>() + s["skipped"]["rank"].get<std::size_t>() +
            s["skipped"]["unsolvable"].get<std::size_t>() + s["sequences"].get<std::size_t>() +
            s["duplicates"].get<std::size_t>());
  CHECK(s["sequences"] == s["integral"].get<std::size_t>() + s["non_integral"].get<std::size_t>() +
                              s["degenerate"].get<std::size_t>());
  CHECK(s["dedup_conflicts"] == 0);
}

TEST_CASE("scan at bound 5 is deterministic and matches A018896") {
  ScanConfig cfg;
  cfg.bound = 5;
  cfg.oeis_path = fixture;
  cfg.workers = 1;
  const auto serial = run_scan(cfg);
  const auto* rec = find_key(serial, key_one);
  REQUIRE(rec);
  REQUIRE((*rec)["matches"].size() == 1);
  CHECK((*rec)["matches"][0]["anumber"] == "A018896");
  CHECK(find_key(serial, key_two));
  CHECK((*find_key(serial, key_two))["matches"].empty());
  cfg.workers = 4;
  const auto parallel = run_scan(cfg);
  CHECK(to_jsonl(parallel) == to_jsonl(serial));
  CHECK(parallel.summary == serial.summary);

  const std::string path = "scan_test_output.jsonl";
  write_scan(serial, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == to_jsonl(serial));
  std::ifstream side(path + ".summary.json");
  CHECK(nlohmann::json::parse(side) == serial.summary);
  std::remove(path.c_str());
  std::remove((path + ".summary.json").c_str());
}
