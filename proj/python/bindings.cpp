// pybind11 bindings. Structured results cross the boundary as JSON text and
// are decoded on the Python side, so big integers stay exact strings.

#include "tauseq/combinatorics.hpp"
#include "tauseq/fock.hpp"
#include "tauseq/lattice.hpp"
#include "tauseq/oeis.hpp"
#include "tauseq/poly.hpp"
#include "tauseq/recurrence.hpp"
#include "tauseq/scan.hpp"
#include "tauseq/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tauseq;
using nlohmann::json;

namespace {

SublatticeBasis basis_from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.size() != 2) throw LatticeError("a sublattice basis has exactly two rows");
  return SublatticeBasis(to_int_vector(rows[0]), to_int_vector(rows[1]));
}

std::vector<Integer> integers(const std::vector<std::string>& terms) {
  std::vector<Integer> out;
  for (const auto& t : terms) {
    const Rational q = parse_rational(t);
    if (q.get_den() != 1) throw ParseError("term '" + t + "' is not an integer");
    out.push_back(q.get_num());
  }
  return out;
}

std::string derive_json(const SublatticeBasis& basis) { return derivation_to_json(derive_recurrence(basis)).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact tau-function oracles and bilinear recurrence sequences";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<DegreeError>(m, "DegreeError", error);
  py::register_exception<LatticeError>(m, "LatticeError", error);
  py::register_exception<RankError>(m, "RankError", error);
  py::register_exception<UnsolvableError>(m, "UnsolvableError", error);
  py::register_exception<WindowError>(m, "WindowError", error);
  py::register_exception<QueryTooShort>(m, "QueryTooShort", error);
  py::register_exception<TorsionError>(m, "TorsionError", error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const TorsionError& e) {
      py::list factors;
      for (const auto& f : e.factors()) factors.append(py::int_(py::str(f.get_str())));
      const py::object type = py::module_::import("tauseq._core").attr("TorsionError");
      py::object instance = type(e.what());
      instance.attr("invariant_factors") = factors;
      PyErr_SetObject(type.ptr(), instance.ptr());
    }
  });

  m.def("derive_json", [](const std::vector<std::vector<long long>>& rows) { return derive_json(basis_from_rows(rows)); },
        py::arg("rows"));
  m.def("derive_polygon_json",
        [](const std::vector<std::pair<long long, long long>>& vertices) {
          std::vector<Point2> pts;
          for (const auto& [x, y] : vertices) pts.push_back({Integer(static_cast<long>(x)), Integer(static_cast<long>(y))});
          return derive_json(polygon_to_basis(EdgePolygon::from_vertices(pts)));
        },
        py::arg("vertices"));
  m.def("generate_json",
        [](const std::string& recurrence, std::size_t terms, const std::optional<std::vector<std::string>>& init) {
          const auto rec = recurrence_from_json(json::parse(recurrence));
          std::optional<std::vector<Rational>> seed;
          if (init) {
            seed.emplace();
            for (const auto& t : *init) seed->push_back(parse_rational(t));
          }
          return run_to_json(generate(rec, terms, seed)).dump();
        },
        py::arg("recurrence"), py::arg("terms"), py::arg("init") = std::nullopt);
  m.def("maya_from_young_json",
        [](const std::vector<int>& parts, int charge) { return maya_to_json(maya_from_young_charge(parts, charge)).dump(); },
        py::arg("parts"), py::arg("charge") = 0);
  m.def("young_from_maya_json",
        [](const std::string& maya) { return young_charge_from_maya(maya_from_json(json::parse(maya))); },
        py::arg("maya"));
  m.def("schur", [](const std::vector<int>& parts, int num_vars) { return schur(parts, num_vars).to_string(); },
        py::arg("parts"), py::arg("num_vars") = 8);
  m.def("kp_residual_of_schur",
        [](const std::vector<int>& parts) { return kp_bilinear_residual(schur(parts, 8)).to_string(); },
        py::arg("parts"));
  m.def("verify_json",
        [](const std::string& check, std::uint64_t seed, int trials, int cutoff, int max_weight, int dim) {
          const VerifyOptions options = VerifyOptions{check, trials, cutoff, max_weight, dim}.resolved();
          py::gil_scoped_release release;
          return run_verify(options, seed).dump();
        },
        py::arg("check"), py::arg("seed") = 0, py::arg("trials") = -1, py::arg("cutoff") = -1,
        py::arg("max_weight") = 6, py::arg("dim") = -1);
  m.def("match",
        [](const std::vector<std::string>& terms, const std::string& db_path, std::size_t min_match, bool trim,
           bool allow_offset) {
          const MatchPolicy policy{trim, min_match, allow_offset};
          std::vector<std::pair<std::string, std::size_t>> out;
          for (const auto& hit : match_sequence(load_stripped_file(db_path), integers(terms), policy))
            out.emplace_back(hit.anumber, hit.position);
          return out;
        },
        py::arg("terms"), py::arg("db_path"), py::arg("min_match") = 10, py::arg("trim_leading_ones") = true,
        py::arg("allow_offset") = true);
  m.def("scan_json",
        [](int bound, std::size_t terms, const std::string& oeis_path, unsigned workers) {
          ScanConfig cfg;
          cfg.bound = bound;
          cfg.terms = terms;
          cfg.oeis_path = oeis_path;
          cfg.workers = workers;
          py::gil_scoped_release release;
          const ScanResult r = run_scan(cfg);
          return std::make_pair(to_jsonl(r), r.summary.dump());
        },
        py::arg("bound") = 5, py::arg("terms") = 24, py::arg("oeis_path") = "", py::arg("workers") = 0);
}
