#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fqw/error.hpp"
#include "fqw/io.hpp"
#include "fqw/table1.hpp"

namespace fqw::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  bool json_out = false;
  std::string data_dir;

  fs::path data() const { return data_dir.empty() ? default_data_dir() : fs::path(data_dir); }
};

// A file path as given, else looked up in the data directory (with or without ".json").
fs::path resolve_group(const std::string& arg, const fs::path& data_dir) {
  const fs::path p(arg);
  if (fs::exists(p)) return p;
  if (fs::exists(data_dir / p)) return data_dir / p;
  fs::path with_ext = data_dir / p;
  with_ext += ".json";
  if (fs::exists(with_ext)) return with_ext;
  throw InputError("group file not found: " + arg + " (data directory " + data_dir.string() + ")");
}

struct LoadedGroup {
  fs::path path;
  GroupTable table;
  std::vector<Permutation> perms;
};

LoadedGroup load_group(const std::string& arg, const fs::path& data_dir) {
  const fs::path path = resolve_group(arg, data_dir);
  const GroupFile file = load_group_file(path);
  return {path, build_group(file), enumerate_permutations(file.generators)};
}

std::string cycles_of(const LoadedGroup& g, Element e) { return cycles_to_string(g.perms.at(e)); }

json vector_json(const LoadedGroup& g, const GeneratingVector& v) {
  json j = to_json(v);
  json cyc = json::array();
  for (Element e : v.entries) cyc.push_back(cycles_of(g, e));
  j["cycles"] = cyc;
  return j;
}

std::string vector_text(const LoadedGroup& g, const GeneratingVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (i) s += ", ";
    s += cycles_of(g, v.entries[i]);
  }
  return s + ")";
}

// "2,-1;-1,2" or "[[2,-1],[-1,2]]"
std::vector<DivisorClass> parse_classes(const std::string& text) {
  std::vector<DivisorClass> out;
  if (text.empty()) return out;
  if (text.front() == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("bad class list: ") + e.what());
    }
    if (!j.is_array()) throw InputError("class list must be a JSON array");
    if (j.size() == 2 && j[0].is_number_integer()) return {divisor_from_json(j)};
    for (const auto& c : j) out.push_back(divisor_from_json(c));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InputError("class must be written a,b: '" + item + "'");
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string sa = item.substr(0, comma), sb = item.substr(comma + 1);
      const long long a = std::stoll(sa, &used_a), b = std::stoll(sb, &used_b);
      if (sa.find_first_not_of(' ', used_a) != std::string::npos || sb.find_first_not_of(' ', used_b) != std::string::npos)
        throw std::invalid_argument(item);
      out.push_back({a, b});
    } catch (const std::logic_error&) {
      throw InputError("class must be written a,b: '" + item + "'");
    }
  }
  return out;
}

std::string class_text(const DivisorClass& d) { return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")"; }

std::string cone_text(const Cone2& c) {
  std::string s = class_text(c.ray1);
  if (c.ray2) s += ", " + class_text(*c.ray2);
  return s;
}

std::string rational_text(const boost::rational<long long>& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::optional<Table1Row> reference_for(const fs::path& group_path, const Signature& s1, const Signature& s2) {
  const std::string file = group_path.filename().string();
  for (const auto& row : table1_reference()) {
    if (row.group_file != file) continue;
    if ((row.sig1 == s1 && row.sig2 == s2) || (row.sig1 == s2 && row.sig2 == s1)) return row;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

int table1_verify(const Common& c, const std::string& row_key, unsigned jobs, const std::string& reference,
                  std::ostream& out) {
  std::vector<Table1Row> rows = reference.empty() ? table1_reference() : load_table1_reference(reference);
  if (!row_key.empty()) {
    rows = select_rows(rows, row_key);
    if (rows.empty()) throw InputError("no reference row matches '" + row_key + "'");
  }
  for (const auto& row : rows) {
    if (!fs::exists(c.data() / row.group_file))
      throw InputError("missing group data file " + (c.data() / row.group_file).string());
  }
  const auto results = verify_rows(rows, c.data(), jobs);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed() ? 1 : 0;

  if (c.json_out) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    out << json{{"rows", arr}, {"passed", passed}, {"total", results.size()}}.dump(2) << "\n";
  } else {
    out << std::left << std::setw(7) << "row" << std::setw(7) << "group" << std::setw(5) << "|G|" << std::setw(13)
        << "T1" << std::setw(16) << "T2" << std::setw(4) << "g1" << std::setw(4) << "g2" << std::setw(3) << "D"
        << std::setw(7) << "parity" << std::setw(23) << "H1"
        << "result\n";
    for (const auto& r : results) {
      const auto& s = r.surface;
      out << std::setw(7) << r.row.id << std::setw(7) << r.row.group_name << std::setw(5)
          << (s ? std::to_string(s->group_order) : "-") << std::setw(13) << r.row.sig1.to_string() << std::setw(16)
          << r.row.sig2.to_string() << std::setw(4) << (s ? std::to_string(s->g1) : "-") << std::setw(4)
          << (s ? std::to_string(s->g2) : "-") << std::setw(3) << (s ? std::to_string(s->moduli_dim) : "-")
          << std::setw(7) << (r.parity ? (r.parity->verdict == ParityVerdict::Even ? "even" : "?") : "-")
          << std::setw(23) << (r.h1 ? primary_decomposition(*r.h1) : "-") << (r.passed() ? "PASS" : "FAIL") << "\n";
      if (!r.error.empty()) out << "    error: " << r.error << "\n";
      for (const auto& chk : r.checks) {
        if (!chk.passed) out << "    " << chk.name << ": " << chk.detail << "\n";
      }
    }
    out << passed << "/" << results.size() << " rows pass\n";
  }
  return passed == results.size() ? kOk : kVerificationFailed;
}

int table1_reference_cmd(std::ostream& out) {
  json arr = json::array();
  for (const auto& row : table1_reference()) arr.push_back(to_json(row));
  out << json{{"rows", arr}}.dump(2) << "\n";
  return kOk;
}

int enumerate_cmd(const Common& c, const std::string& group_arg, const std::string& t1, const std::string& t2,
                  std::optional<std::size_t> limit, unsigned jobs, bool timing, std::ostream& out) {
  const LoadedGroup g = load_group(group_arg, c.data());
  const Signature s1 = parse_signature(t1), s2 = parse_signature(t2);
  const auto n = static_cast<long long>(g.table.order());
  rh_genus(n, s1, true);
  rh_genus(n, s2, true);

  const auto t0 = std::chrono::steady_clock::now();
  const FreePairSearch search = search_free_pair(g.table, s1, s2, jobs);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::optional<ProductSurface> surface;
  if (search.witness) surface = surface_invariants(g.table, search.witness->first, search.witness->second);

  std::vector<GeneratingVector> list1, list2;
  if (limit) {
    list1 = enumerate_generating_vectors(g.table, s1, {limit, jobs});
    list2 = enumerate_generating_vectors(g.table, s2, {limit, jobs});
  }

  if (c.json_out) {
    json j{{"group", g.table.name()}, {"order", n}, {"sig1", s1.periods()}, {"sig2", s2.periods()}};
    j["witness"] = search.witness ? json{{"V1", vector_json(g, search.witness->first)},
                                         {"V2", vector_json(g, search.witness->second)}}
                                  : json(nullptr);
    j["invariants"] = surface ? to_json(*surface) : json(nullptr);
    j["search"] = {{"sig1_vectors", search.first_vectors},
                   {"sig2_vectors", search.second_vectors},
                   {"sig1_sigma_sets", search.first_sigma_sets},
                   {"sig2_sigma_sets", search.second_sigma_sets}};
    if (limit) {
      json a = json::array(), b = json::array();
      for (const auto& v : list1) a.push_back(vector_json(g, v));
      for (const auto& v : list2) b.push_back(vector_json(g, v));
      j["vectors"] = {{"sig1", a}, {"sig2", b}};
    }
    j["timing"] = timing ? json{{"search_seconds", seconds}} : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "group " << g.table.name() << " (order " << n << "), T1 " << s1.to_string() << ", T2 " << s2.to_string()
        << "\n";
    out << "canonical vectors inspected: " << search.first_vectors << " for T1, " << search.second_vectors
        << " for T2\n";
    out << "distinct sigma sets: " << search.first_sigma_sets << " for T1, " << search.second_sigma_sets << " for T2\n";
    if (search.witness) {
      out << "V1 = " << vector_text(g, search.witness->first) << "\n";
      out << "V2 = " << vector_text(g, search.witness->second) << "\n";
      out << "g1 = " << surface->g1 << ", g2 = " << surface->g2 << ", K^2 = " << surface->K2
          << ", chi = " << surface->chi << ", c2 = " << surface->c2 << ", D = " << surface->moduli_dim << "\n";
    } else {
      out << "no pair with disjoint sigma sets\n";
    }
    if (limit) {
      out << "first " << *limit << " canonical vectors for T1:\n";
      for (const auto& v : list1) out << "  " << vector_text(g, v) << "\n";
      out << "first " << *limit << " canonical vectors for T2:\n";
      for (const auto& v : list2) out << "  " << vector_text(g, v) << "\n";
    }
    if (timing) out << "search time: " << seconds << " s\n";
  }
  return search.witness ? kOk : kVerificationFailed;
}

int parity_cmd(const Common& c, long long order, const std::string& t1, const std::string& t2, std::ostream& out) {
  if (order <= 0) throw InputError("order must be positive");
  const Signature s1 = parse_signature(t1), s2 = parse_signature(t2);
  const ParityReport r = classify_parity(order, s1, s2);
  if (c.json_out) {
    json j{{"order", order}, {"sig1", s1.periods()}, {"sig2", s2.periods()}};
    j["report"] = to_json(r);
    out << j.dump(2) << "\n";
  } else {
    out << "d1 = " << r.d1 << ", d2 = " << r.d2 << ", Phi1.Phi2 = " << rational_text(r.phi_product) << "\n";
    out << "delta = (" << r.delta.first << "," << r.delta.second << "), K = " << rational_text(r.k1) << " Phi1 + "
        << rational_text(r.k2) << " Phi2\n";
    out << "verdict: " << to_string(r.verdict) << " (" << r.rule << ")\n";
    out << r.criterion << "\n";
  }
  return kOk;
}

int homology_cmd(const Common& c, const std::string& group_arg, const std::string& t1, const std::string& t2,
                 std::ostream& out) {
  const LoadedGroup g = load_group(group_arg, c.data());
  const Signature s1 = parse_signature(t1), s2 = parse_signature(t2);
  const auto witness = free_pair_exists(g.table, s1, s2);
  if (!witness) throw InvariantViolation("no pair with disjoint sigma sets for these signatures");
  const AbelianInvariants h1 = fiber_product_h1(g.table, witness->first, witness->second);
  const auto ref = reference_for(g.path, s1, s2);
  std::optional<bool> matches;
  if (ref) matches = h1 == AbelianInvariants{ref->expected_H1, 0};

  if (c.json_out) {
    json j{{"group", g.table.name()},
           {"signatures", json::array({s1.periods(), s2.periods()})},
           {"witness", {{"V1", vector_json(g, witness->first)}, {"V2", vector_json(g, witness->second)}}},
           {"invariant_factors", h1.factors},
           {"free_rank", h1.free_rank},
           {"order", h1.torsion_order().str()},
           {"primary", primary_decomposition(h1)}};
    j["matches_reference"] = matches ? json(*matches) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "H1 = " << primary_decomposition(h1) << "  (invariant factors " << to_string(h1) << ", order "
        << h1.torsion_order().str() << ")\n";
    if (ref) out << "reference " << ref->id << ": " << (*matches ? "match" : "MISMATCH") << "\n";
  }
  return matches.value_or(true) ? kOk : kVerificationFailed;
}

int cones_cmd(const Common& c, const std::string& form_name, const std::string& negatives_text, std::ostream& out) {
  const IntersectionForm form(form_kind_from_string(form_name));
  const auto negatives = parse_classes(negatives_text);
  const ConePair cones = cone_from_negatives(form, negatives);

  std::vector<DivisorClass> nef{cones.nef.ray1}, eff{cones.eff.ray1};
  if (cones.nef.ray2) nef.push_back(*cones.nef.ray2);
  if (cones.eff.ray2) eff.push_back(*cones.eff.ray2);
  bool dual = true;
  json pairings = json::array();
  for (const auto& n : nef) {
    json row = json::array();
    for (const auto& e : eff) {
      const long long v = form.pair(n, e);
      dual = dual && v >= 0;
      row.push_back(v);
    }
    pairings.push_back(row);
  }

  if (c.json_out) {
    json neg = json::array();
    for (const auto& d : negatives) neg.push_back(to_json(d));
    json j{{"form", to_string(form.kind())}, {"canonical", to_json(canonical_class(form))}, {"negatives", neg}};
    j["nef"] = to_json(cones.nef);
    j["eff"] = to_json(cones.eff);
    j["pairings"] = pairings;
    j["dual"] = dual;
    out << j.dump(2) << "\n";
  } else {
    out << "form " << to_string(form.kind()) << ", K = " << class_text(canonical_class(form)) << "\n";
    out << "eff: " << cone_text(cones.eff) << "\n";
    out << "nef: " << cone_text(cones.nef) << "\n";
    out << "nef . eff pairings all >= 0: " << (dual ? "yes" : "no") << "\n";
  }
  return dual ? kOk : kVerificationFailed;
}

int mds_check_cmd(const Common& c, const std::string& path, std::ostream& out) {
  const SurfaceDescriptor d = load_descriptor(path);
  validate(d);
  const Verdict v = evaluate(d);
  if (c.json_out) {
    out << json{{"descriptor", to_json(d)}, {"verdict", to_json(v)}}.dump(2) << "\n";
  } else {
    out << (d.name.empty() ? std::string("surface") : d.name) << ": " << to_string(v.status) << "\n";
    for (const auto& r : v.rules_fired) out << "  " << r.rule << ": " << r.statement << "\n";
    if (v.cones) out << "  eff: " << cone_text(v.cones->eff) << "\n  nef: " << cone_text(v.cones->nef) << "\n";
    if (!v.unresolved.empty()) out << "  unresolved: " << v.unresolved << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fake quadric workbench: group enumeration, parity, homology, cones and MDS checks"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data-dir", common.data_dir, "Group data directory (default: $FQW_DATA_DIR or the built-in path)");

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", common.json_out, "Machine-readable JSON output"); };

  auto* t1 = app.add_subcommand("table1", "Reference classification table");
  t1->require_subcommand(1);
  auto* verify = t1->add_subcommand("verify", "Re-derive every row and compare with the reference");
  std::string row_key, reference_file;
  unsigned jobs = 1;
  verify->add_option("--row", row_key, "Row id or group name");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  verify->add_option("--reference", reference_file, "Reference rows as JSON instead of the built-in table")
      ->check(CLI::ExistingFile);
  json_flag(verify);
  auto* reference = t1->add_subcommand("reference", "Print the built-in reference rows as JSON");

  std::string group_arg, sig1, sig2;
  std::size_t limit = 0;
  bool timing = false;
  auto* en = app.add_subcommand("enumerate", "Search for a free pair of generating vectors");
  en->add_option("--group", group_arg, "Group file or name in the data directory")->required();
  en->add_option("--sig1", sig1, "First signature, e.g. 2,5,5")->required();
  en->add_option("--sig2", sig2, "Second signature, e.g. 3^4")->required();
  auto* limit_opt = en->add_option("--limit", limit, "Also list the first K canonical vectors per signature");
  en->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  en->add_flag("--timing", timing, "Report wall-clock search time");
  json_flag(en);

  long long order = 0;
  auto* par = app.add_subcommand("parity", "Classify the parity of the intersection form");
  par->add_option("--order", order, "Group order")->required();
  par->add_option("--sig1", sig1, "First signature")->required();
  par->add_option("--sig2", sig2, "Second signature")->required();
  json_flag(par);

  auto* hom = app.add_subcommand("homology", "First homology of the quotient surface");
  hom->add_option("--group", group_arg, "Group file or name in the data directory")->required();
  hom->add_option("--sig1", sig1, "First signature")->required();
  hom->add_option("--sig2", sig2, "Second signature")->required();
  json_flag(hom);

  std::string form_name, negatives;
  auto* cn = app.add_subcommand("cones", "Effective and nef cones from negative curves");
  cn->add_option("--form", form_name, "even or odd")->required()->check(CLI::IsMember({"even", "odd"}));
  cn->add_option("--negatives", negatives, "Classes a,b separated by ';' (use --negatives=-1,2 for a leading minus)");
  json_flag(cn);

  std::string descriptor;
  auto* mds = app.add_subcommand("mds-check", "Evaluate the Mori dream space rules on a descriptor");
  mds->add_option("--descriptor", descriptor, "Descriptor JSON file")->required()->check(CLI::ExistingFile);
  json_flag(mds);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*verify) return table1_verify(common, row_key, jobs, reference_file, out);
    if (*reference) return table1_reference_cmd(out);
    if (*en) {
      std::optional<std::size_t> lim;
      if (*limit_opt) lim = limit;
      return enumerate_cmd(common, group_arg, sig1, sig2, lim, jobs, timing, out);
    }
    if (*par) return parity_cmd(common, order, sig1, sig2, out);
    if (*hom) return homology_cmd(common, group_arg, sig1, sig2, out);
    if (*cn) return cones_cmd(common, form_name, negatives, out);
    if (*mds) return mds_check_cmd(common, descriptor, out);
  } catch (const InvariantViolation& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::exception& e) {
    // InputError, ParityViolation, CapExceeded and JSON errors all stem from bad input.
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace fqw::cli
