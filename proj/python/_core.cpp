#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "fqw/error.hpp"
#include "fqw/homology.hpp"
#include "fqw/io.hpp"
#include "fqw/lattice.hpp"
#include "fqw/mds.hpp"
#include "fqw/parity.hpp"
#include "fqw/product.hpp"
#include "fqw/table1.hpp"

namespace py = pybind11;
using namespace fqw;

// Results cross the boundary as JSON text; the Python package decodes them.
namespace {

IntersectionForm form_of(const std::string& name) { return IntersectionForm(form_kind_from_string(name)); }

std::vector<DivisorClass> classes_of(const std::vector<std::pair<long long, long long>>& xs) {
  std::vector<DivisorClass> out;
  for (const auto& [a, b] : xs) out.push_back({a, b});
  return out;
}

std::string group_info(const std::string& path) {
  const GroupTable g = build_group(load_group_file(path));
  json j = to_json(compute_fingerprint(g));
  j["name"] = g.name();
  return j.dump();
}

std::string free_pair(const std::string& path, const std::string& sig1, const std::string& sig2, unsigned jobs) {
  const GroupTable g = build_group(load_group_file(path));
  const Signature s1 = parse_signature(sig1), s2 = parse_signature(sig2);
  FreePairSearch r;
  {
    py::gil_scoped_release release;
    r = search_free_pair(g, s1, s2, jobs);
  }
  json j{{"group", g.name()}, {"order", g.order()}, {"witness", nullptr}, {"invariants", nullptr}, {"h1", nullptr}};
  j["search"] = {{"first_vectors", r.first_vectors},
                 {"second_vectors", r.second_vectors},
                 {"first_sigma_sets", r.first_sigma_sets},
                 {"second_sigma_sets", r.second_sigma_sets}};
  if (r.witness) {
    j["witness"] = {{"first", to_json(r.witness->first)}, {"second", to_json(r.witness->second)}};
    j["invariants"] = to_json(surface_invariants(g, r.witness->first, r.witness->second));
  }
  return j.dump();
}

std::string h1(const std::string& path, const std::string& sig1, const std::string& sig2) {
  const GroupTable g = build_group(load_group_file(path));
  py::gil_scoped_release release;
  const auto w = free_pair_exists(g, parse_signature(sig1), parse_signature(sig2));
  if (!w) throw InputError("no free pair for these signatures");
  const AbelianInvariants inv = fiber_product_h1(g, w->first, w->second);
  json j = to_json(inv);
  j["primary"] = primary_decomposition(inv);
  return j.dump();
}

std::string parity(long long order, const std::string& sig1, const std::string& sig2) {
  return to_json(classify_parity(order, parse_signature(sig1), parse_signature(sig2))).dump();
}

std::string cones(const std::string& form, const std::vector<std::pair<long long, long long>>& negatives) {
  return to_json(cone_from_negatives(form_of(form), classes_of(negatives))).dump();
}

std::vector<std::pair<long long, long long>> negative_curves(const std::string& form, long long bound, bool char0) {
  std::vector<std::pair<long long, long long>> out;
  const auto ch = char0 ? Characteristic::Zero : Characteristic::Positive;
  for (const auto& c : negative_curve_candidates(form_of(form), bound, ch)) out.emplace_back(c.a, c.b);
  return out;
}

std::string mds_check(const std::string& descriptor) {
  return to_json(evaluate(descriptor_from_json(json::parse(descriptor)))).dump();
}

std::string table1_verify(const std::string& data_dir, const std::string& row, unsigned jobs) {
  std::vector<Table1Row> rows = table1_reference();
  if (!row.empty()) rows = select_rows(rows, row);
  if (rows.empty()) throw InputError("unknown row: " + row);
  const std::filesystem::path dir = data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir);
  std::vector<RowResult> results;
  {
    py::gil_scoped_release release;
    results = verify_rows(rows, dir, jobs);
  }
  json out = json::array();
  int passed = 0;
  for (const auto& r : results) {
    out.push_back(to_json(r));
    passed += r.passed();
  }
  return json{{"rows", out}, {"passed", passed}, {"total", results.size()}}.dump();
}

py::tuple run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fqw");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free-action search, parity, homology and cone tools for isogenous product surfaces";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<ParityViolation>(m, "ParityViolation", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("default_data_dir", [] { return default_data_dir().string(); });
  m.def("group_info", &group_info, py::arg("path"));
  m.def("rh_genus", [](long long order, const std::string& sig) { return rh_genus(order, parse_signature(sig)); },
        py::arg("order"), py::arg("sig"));
  m.def("free_pair", &free_pair, py::arg("path"), py::arg("sig1"), py::arg("sig2"), py::arg("jobs") = 1);
  m.def("h1", &h1, py::arg("path"), py::arg("sig1"), py::arg("sig2"));
  m.def("parity", &parity, py::arg("order"), py::arg("sig1"), py::arg("sig2"));
  m.def("cones", &cones, py::arg("form"), py::arg("negatives"));
  m.def("negative_curves", &negative_curves, py::arg("form"), py::arg("bound"), py::arg("char0") = false);
  m.def("mds_check", &mds_check, py::arg("descriptor"));
  m.def("table1_verify", &table1_verify, py::arg("data_dir") = "", py::arg("row") = "", py::arg("jobs") = 1);
  m.def("run_cli", &run_cli, py::arg("args"));
}
