// tauseq command-line entry point.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse/usage error, 3 torsion,
// 4 rank, 5 unsolvable recurrence, 6 I/O or network failure.

#include "tauseq/combinatorics.hpp"
#include "tauseq/fock.hpp"
#include "tauseq/lattice.hpp"
#include "tauseq/oeis.hpp"
#include "tauseq/recurrence.hpp"
#include "tauseq/scan.hpp"
#include "tauseq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tauseq;
using nlohmann::json;

namespace {

enum Exit { exit_ok = 0, exit_verification = 1, exit_parse = 2, exit_torsion = 3, exit_rank = 4, exit_unsolvable = 5, exit_io = 6 };

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
};

struct Failure {
  int code;
  json doc;
};

void emit(const Globals& g, json doc, const json& config, const std::string& human) {
  if (g.json) {
    doc["config"] = config;
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << human;
  }
}

std::vector<Integer> parse_terms(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty term in '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    const Rational q = parse_rational(tok);
    if (q.get_den() != 1) throw ParseError("term '" + tok + "' is not an integer");
    out.push_back(q.get_num());
  }
  return out;
}

SublatticeBasis basis_from(const std::string& matrix, const std::string& polygon) {
  if (!matrix.empty() && !polygon.empty()) throw ParseError("give either --matrix or --polygon, not both");
  if (!matrix.empty()) return parse_matrix(matrix);
  if (!polygon.empty()) return polygon_to_basis(EdgePolygon::from_vertices(parse_points(polygon)));
  throw ParseError("one of --matrix or --polygon is required");
}

// --- maya ------------------------------------------------------------------

struct MayaArgs {
  std::string young;
  bool young_given = false;
  int charge = 0;
  std::string maya;
};

int cmd_maya(const Globals& g, const MayaArgs& a) {
  json config{{"young", a.young}, {"charge", a.charge}, {"maya", a.maya}};
  if (a.young_given == !a.maya.empty()) throw ParseError("give exactly one of --young or --maya");
  if (a.young_given) {
    const auto m = maya_from_young_charge(parse_partition(a.young), a.charge);
    const json doc = maya_to_json(m);
    if (g.json) emit(g, {{"maya", doc}}, config, "");
    else std::cout << doc.dump() << '\n';
    return exit_ok;
  }
  json parsed;
  try {
    parsed = json::parse(a.maya);
  } catch (const json::exception& e) {
    throw ParseError(std::string("--maya is not JSON: ") + e.what());
  }
  const auto [parts, charge] = young_charge_from_maya(maya_from_json(parsed));
  std::string p;
  for (int x : parts) p += (p.empty() ? "" : ",") + std::to_string(x);
  emit(g, {{"young", parts}, {"charge", charge}}, config, "young " + (p.empty() ? "()" : p) + " charge " + std::to_string(charge) + "\n");
  return exit_ok;
}

// --- derive / generate ------------------------------------------------------

int cmd_derive(const Globals& g, const std::string& matrix, const std::string& polygon) {
  const json config{{"matrix", matrix}, {"polygon", polygon}};
  const auto basis = basis_from(matrix, polygon);
  const Derivation d = derive_recurrence(basis);
  const json doc = derivation_to_json(d);
  if (g.json) emit(g, doc, config, "");
  else std::cout << doc.dump() << '\n';
  return exit_ok;
}

int cmd_generate(const Globals& g, const std::string& rec_json, const std::string& matrix, std::size_t terms,
                 const std::string& init) {
  const json config{{"recurrence_json", rec_json}, {"matrix", matrix}, {"terms", terms}, {"init", init}};
  if (rec_json.empty() == matrix.empty()) throw ParseError("give exactly one of --recurrence-json or --matrix");
  BilinearRecurrence rec({}, {1, -1, 1});
  if (!matrix.empty()) {
    rec = derive_recurrence(parse_matrix(matrix)).recurrence;
  } else {
    std::string text = rec_json;
    if (!text.empty() && text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw ParseError("cannot read recurrence file '" + text.substr(1) + "'");
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
      rec = recurrence_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw ParseError(std::string("recurrence is not JSON: ") + e.what());
    }
  }
  std::optional<std::vector<Rational>> seed;
  if (!init.empty()) {
    seed.emplace();
    for (const auto& x : parse_terms(init)) seed->emplace_back(x);
  }
  SequenceRun run = [&] {
    try {
      return generate(rec, terms, seed);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  const json doc = run_to_json(run);
  if (g.json) emit(g, doc, config, "");
  else std::cout << doc.dump() << '\n';
  return exit_ok;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Globals& g, VerifyOptions a) {
  a = a.resolved();
  json doc = run_verify(a, g.seed);
  const int failures = doc["failures"].get<int>();
  if (g.json) doc["config"] = a.to_json();
  std::cout << doc.dump() << '\n';
  return failures == 0 ? exit_ok : exit_verification;
}

// --- scan / match -----------------------------------------------------------

int cmd_scan(const Globals& g, ScanConfig cfg) {
  cfg.seed = g.seed;
  const ScanResult result = [&] {
    try {
      return run_scan(cfg);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  if (!cfg.output_path.empty()) {
    write_scan(result, cfg.output_path);
    std::cout << result.summary.dump() << '\n';
  } else {
    std::cout << to_jsonl(result);
    std::cerr << result.summary.dump() << '\n';
  }
  return exit_ok;
}

struct MatchArgs {
  std::string terms;
  std::string oeis;
  std::size_t min_match = 10;
  bool no_trim = false;
  bool exact_start = false;
  bool online = false;
};

int cmd_match(const Globals& g, const MatchArgs& a) {
  const json config{{"terms", a.terms},         {"oeis", a.oeis},        {"min_match", a.min_match},
                    {"trim_leading_ones", !a.no_trim}, {"allow_offset", !a.exact_start}, {"online", a.online}};
  const auto terms = parse_terms(a.terms);
  MatchPolicy policy;
  policy.min_match_terms = a.min_match;
  policy.trim_leading_ones = !a.no_trim;
  policy.allow_offset = !a.exact_start;
  if (a.oeis.empty() && !a.online) throw ParseError("give --oeis <path> and/or --online");
  json doc;
  json hits = json::array();
  try {
    if (!a.oeis.empty()) {
      const auto db = load_stripped_file(a.oeis);
      for (const auto& m : db.malformed())
        std::cerr << a.oeis << ":" << m.line << ": malformed line skipped: " << m.reason << '\n';
      for (const auto& m : match_sequence(db, terms, policy)) hits.push_back({{"anumber", m.anumber}, {"position", m.position}});
    }
  } catch (const QueryTooShort& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  doc["matches"] = hits;
  if (a.online) {
    json advisory = json::array();
    for (const auto& h : search_online(terms, online_options_from_env())) advisory.push_back({{"anumber", h.anumber}, {"name", h.name}});
    doc["advisory"] = advisory;
  }
  if (g.json) emit(g, doc, config, "");
  else std::cout << doc.dump() << '\n';
  return exit_ok;
}

json error_doc(const std::string& kind, const std::string& message) { return {{"error", kind}, {"message", message}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete tau functions, octahedral recurrences and their integer sequences", "tauseq"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed and --json may follow the subcommand
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key=value configuration file ([subcommand] sections); flags take precedence");
  app.allow_config_extras(false);

  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--json", g.json, "JSON output including the resolved configuration");

  MayaArgs maya;
  auto* maya_cmd = app.add_subcommand("maya", "convert between (partition, charge) and Maya diagrams");
  maya_cmd->add_option("--young", maya.young, "partition such as 4,2,2,1 (empty or () for the vacuum)");
  maya_cmd->add_option("--charge", maya.charge, "charge")->capture_default_str();
  maya_cmd->add_option("--maya", maya.maya, "Maya diagram JSON to convert back");

  std::string matrix, polygon;
  auto* derive_cmd = app.add_subcommand("derive", "compile a sublattice into a bilinear recurrence");
  derive_cmd->add_option("--matrix", matrix, "rows a;b, e.g. \"5,-2,-2,-1;1,1,-1,-1\"");
  derive_cmd->add_option("--polygon", polygon, "vertices \"x1,y1 x2,y2 ...\" counterclockwise");

  std::string rec_json, gen_matrix, init;
  std::size_t gen_terms = 24;
  auto* generate_cmd = app.add_subcommand("generate", "iterate a recurrence");
  generate_cmd->add_option("--recurrence-json", rec_json, "recurrence JSON text, or @file");
  generate_cmd->add_option("--matrix", gen_matrix, "derive the recurrence from this basis first");
  generate_cmd->add_option("--terms", gen_terms, "number of terms")->capture_default_str();
  generate_cmd->add_option("--init", init, "seed window, comma separated (default all ones)");

  ScanConfig scan;
  auto* scan_cmd = app.add_subcommand("scan", "enumerate polygons and collect sequences");
  scan_cmd->add_option("--bound", scan.bound, "edge coordinate bound B")->capture_default_str();
  scan_cmd->add_option("--terms", scan.terms, "terms per sequence (>= 16)")->capture_default_str();
  scan_cmd->add_option("--oeis", scan.oeis_path, "OEIS stripped file (optionally gzip)");
  scan_cmd->add_option("--output", scan.output_path, "JSONL output; summary goes to <output>.summary.json");
  scan_cmd->add_option("--workers", scan.workers, "worker threads (0 = all cores)")->capture_default_str();
  scan_cmd->add_option("--min-match", scan.policy.min_match_terms, "minimum informative terms for a match")
      ->capture_default_str();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run an exact identity oracle");
  verify_cmd->add_option("check", verify.check, "plucker|plucker4|states|octahedron|kp|permutation")
      ->required()
      ->check(CLI::IsMember({"plucker", "plucker4", "states", "octahedron", "kp", "permutation"}));
  verify_cmd->add_option("--trials", verify.trials, "number of trials (tables for permutation)");
  verify_cmd->add_option("--cutoff", verify.cutoff, "Fock window cutoff K");
  verify_cmd->add_option("--max-weight", verify.max_weight, "largest partition size for kp")->capture_default_str();
  verify_cmd->add_option("--dim", verify.dim, "ambient dimension for the Plücker checks");

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "look a sequence up in an OEIS snapshot");
  match_cmd->add_option("--terms", match.terms, "comma-separated terms")->required();
  match_cmd->add_option("--oeis", match.oeis, "OEIS stripped file (optionally gzip)");
  match_cmd->add_option("--min-match", match.min_match, "minimum informative terms")->capture_default_str();
  match_cmd->add_flag("--no-trim", match.no_trim, "keep leading ones");
  match_cmd->add_flag("--exact-start", match.exact_start, "only match at the start of an entry");
  match_cmd->add_flag("--online", match.online, "also query the live OEIS search (advisory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_parse;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message, json extra = json::object()) {
    json doc = error_doc(kind, message);
    doc.update(extra);
    std::cerr << "tauseq: " << message << '\n';
    std::cout << doc.dump() << '\n';
    return code;
  };

  try {
    maya.young_given = maya_cmd->count("--young") > 0;
    if (*maya_cmd) return cmd_maya(g, maya);
    if (*derive_cmd) return cmd_derive(g, matrix, polygon);
    if (*generate_cmd) return cmd_generate(g, rec_json, gen_matrix, gen_terms, init);
    if (*scan_cmd) return cmd_scan(g, scan);
    if (*verify_cmd) return cmd_verify(g, verify);
    if (*match_cmd) return cmd_match(g, match);
  } catch (const TorsionError& e) {
    json factors = json::array();
    for (const auto& f : e.factors()) factors.push_back(f.get_str());
    return fail(exit_torsion, "torsion", e.what(), {{"invariant_factors", factors}});
  } catch (const RankError& e) {
    return fail(exit_rank, "rank", e.what());
  } catch (const UnsolvableError& e) {
    return fail(exit_unsolvable, "unsolvable", e.what());
  } catch (const ParseError& e) {
    return fail(exit_parse, "parse", e.what());
  } catch (const LatticeError& e) {
    return fail(exit_parse, "invalid_input", e.what());
  } catch (const DegreeError& e) {
    return fail(exit_parse, "invalid_input", e.what());
  } catch (const WindowError& e) {
    return fail(exit_parse, "invalid_input", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(exit_parse, "invalid_input", e.what());
  } catch (const NetworkError& e) {
    return fail(exit_io, "network", e.what());
  } catch (const HttpStatusError& e) {
    return fail(exit_io, "http_status", e.what(), {{"status", e.status()}});
  } catch (const PayloadError& e) {
    return fail(exit_io, "payload", e.what());
  } catch (const Error& e) {
    return fail(exit_io, "io", e.what());
  }
  return exit_ok;
}
