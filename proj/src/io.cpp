#include "fqw/io.hpp"

#include <cstdlib>
#include <fstream>

#include "fqw/error.hpp"

namespace fqw {

namespace {

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::string rational_string(const boost::rational<long long>& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace

GroupFile parse_group_file(const json& doc) {
  GroupFile f;
  f.name = field<std::string>(doc, "name");
  f.claimed_catalog_id = doc.value("claimed_catalog_id", "");
  f.generators.degree = field<int>(doc, "degree");
  for (const auto& gen : field<json>(doc, "generators")) {
    f.generators.perms.push_back(
        permutation_from_cycles(gen.get<std::vector<std::vector<int>>>(), f.generators.degree));
  }
  if (doc.contains("fingerprint")) {
    const auto& fp = doc["fingerprint"];
    GroupFingerprint g;
    g.order = field<std::size_t>(fp, "order");
    const json orders = field<json>(fp, "element_orders");
    for (const auto& [k, v] : orders.items()) g.element_orders[std::stoi(k)] = v.get<int>();
    g.center_order = field<std::size_t>(fp, "center_order");
    g.abelianization = field<std::vector<long long>>(fp, "abelianization");
    f.fingerprint = g;
  }
  return f;
}

GroupFile load_group_file(const std::filesystem::path& path) {
  try {
    return parse_group_file(parse_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

GroupTable build_group(const GroupFile& file, std::size_t cap) { return build_group(file.generators, file.name, cap); }

AbelianInvariants group_abelianization(const GroupTable& group) {
  const std::size_t n = group.order();
  std::vector<std::vector<long long>> rows;
  rows.reserve(n * n + 1);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      std::vector<long long> row(n, 0);
      row[a] += 1;
      row[b] += 1;
      row[group.mul(a, b)] -= 1;
      rows.push_back(std::move(row));
    }
  }
  return smith_normal_form(rows, n);
}

GroupFingerprint compute_fingerprint(const GroupTable& group) {
  GroupFingerprint f;
  f.order = group.order();
  f.element_orders = group.order_histogram();
  f.center_order = group.center_order();
  f.abelianization = group_abelianization(group).factors;
  return f;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("FQW_DATA_DIR"); env && *env) return env;
#ifdef FQW_DEFAULT_DATA_DIR
  return FQW_DEFAULT_DATA_DIR;
#else
  return "data/groups";
#endif
}

// ---------------------------------------------------------------------------

json to_json(const DivisorClass& d) { return json::array({d.a, d.b}); }

json to_json(const Cone2& c) {
  json rays = json::array({to_json(c.ray1)});
  if (c.ray2) rays.push_back(to_json(*c.ray2));
  return rays;
}

json to_json(const ConePair& c) { return json{{"nef", to_json(c.nef)}, {"eff", to_json(c.eff)}}; }

json to_json(const GroupFingerprint& f) {
  json orders = json::object();
  for (const auto& [k, v] : f.element_orders) orders[std::to_string(k)] = v;
  return json{{"order", f.order},
              {"element_orders", orders},
              {"center_order", f.center_order},
              {"abelianization", f.abelianization}};
}

json to_json(const GeneratingVector& v) {
  return json{{"signature", v.signature.periods()}, {"entries", v.entries}};
}

json to_json(const ProductSurface& s) {
  return json{{"group", s.group_name}, {"order", s.group_order}, {"V1", to_json(s.first)},
              {"V2", to_json(s.second)}, {"g1", s.g1},        {"g2", s.g2},
              {"K2", s.K2},              {"chi", s.chi},       {"c2", s.c2},
              {"moduli_dim", s.moduli_dim}};
}

json to_json(const ParityReport& r) {
  return json{{"d1", r.d1},
              {"d2", r.d2},
              {"phi_product", rational_string(r.phi_product)},
              {"delta", json::array({r.delta.first, r.delta.second})},
              {"canonical_in_phi", json::array({rational_string(r.k1), rational_string(r.k2)})},
              {"verdict", to_string(r.verdict)},
              {"rule", r.rule},
              {"criterion", r.criterion}};
}

json to_json(const AbelianInvariants& inv) {
  return json{{"invariant_factors", inv.factors},
              {"free_rank", inv.free_rank},
              {"order", inv.torsion_order().str()},
              {"primary", primary_decomposition(inv)}};
}

json to_json(const SurfaceDescriptor& d) {
  json neg = json::array();
  for (const auto& c : d.known_negative_curves) neg.push_back(to_json(c));
  json fib = json::array();
  for (const auto& c : d.known_fibration_classes) fib.push_back(to_json(c));
  return json{{"name", d.name},
              {"parity", to_string(d.parity)},
              {"characteristic", d.characteristic},
              {"flags",
               {{"is_isogenous_product", d.is_isogenous_product},
                {"is_shavel_type", d.is_shavel_type},
                {"p_inert_in_center_field", d.p_inert_in_center_field}}},
              {"known_negative_curves", neg},
              {"known_fibration_classes", fib}};
}

json to_json(const Verdict& v) {
  json rules = json::array();
  for (const auto& r : v.rules_fired) rules.push_back({{"rule", r.rule}, {"statement", r.statement}});
  return json{{"status", to_string(v.status)},
              {"rules_fired", rules},
              {"cones", v.cones ? to_json(*v.cones) : json(nullptr)},
              {"unresolved", v.unresolved}};
}

DivisorClass divisor_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw InputError("divisor class must be a pair of integers, got " + j.dump());
  }
  return {j[0].get<long long>(), j[1].get<long long>()};
}

SurfaceDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) throw InputError("descriptor must be a JSON object");
  SurfaceDescriptor d;
  d.name = j.value("name", "");
  d.parity = surface_parity_from_string(j.value("parity", "unknown"));
  d.characteristic = j.value("characteristic", 0LL);
  if (j.contains("flags")) {
    const auto& f = j["flags"];
    d.is_isogenous_product = f.value("is_isogenous_product", false);
    d.is_shavel_type = f.value("is_shavel_type", false);
    d.p_inert_in_center_field = f.value("p_inert_in_center_field", false);
  }
  for (const auto& c : j.value("known_negative_curves", json::array())) {
    d.known_negative_curves.push_back(divisor_from_json(c));
  }
  for (const auto& c : j.value("known_fibration_classes", json::array())) {
    d.known_fibration_classes.push_back(divisor_from_json(c));
  }
  return d;
}

SurfaceDescriptor load_descriptor(const std::filesystem::path& path) {
  try {
    return descriptor_from_json(parse_file(path));
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace fqw
