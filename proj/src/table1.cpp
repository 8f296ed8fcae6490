#include "fqw/table1.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <thread>

#include "fqw/error.hpp"

namespace fqw {

namespace {

Table1Row make_row(std::string id, std::string name, std::string cid, std::string file, const char* t1,
                   const char* t2, ExpectedParity parity, long long D, std::vector<long long> h1) {
  return Table1Row{std::move(id),      std::move(name),       std::move(cid), std::move(file), parse_signature(t1),
                   parse_signature(t2), parity, D, std::move(h1)};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

const std::vector<Table1Row>& table1_reference() {
  using enum ExpectedParity;
  static const std::vector<Table1Row> rows = {
      make_row("a5-1", "A5", "<60,5>", "a5.json", "[2,5,5]", "[3,3,3,3]", Unknown, 1, {3, 3, 15}),
      make_row("a5-2", "A5", "<60,5>", "a5.json", "[5,5,5]", "[2,2,2,3]", Unknown, 1, {10, 10}),
      make_row("a5-3", "A5", "<60,5>", "a5.json", "[3,3,5]", "[2,2,2,2,2]", Unknown, 2, {2, 2, 2, 6}),
      make_row("s4xz2", "S4xZ2", "<48,48>", "s4xz2.json", "[2,4,6]", "[2,2,2,2,2,2]", Unknown, 3, {2, 2, 2, 2, 4}),
      make_row("g32", "G(32)", "<32,27>", "g32.json", "[2,2,4,4]", "[2,2,2,4]", Unknown, 2, {2, 2, 4, 8}),
      make_row("z5xz5", "Z5^2", "<25,2>", "z5xz5.json", "[5,5,5]", "[5,5,5]", Even, 0, {5, 5, 5}),
      make_row("s4", "S4", "<24,12>", "s4.json", "[3,4,4]", "[2,2,2,2,2,2]", Even, 3, {2, 2, 2, 2, 8}),
      make_row("g16", "G(16)", "<16,3>", "g16.json", "[2,2,4,4]", "[2,2,4,4]", Even, 2, {2, 2, 4, 8}),
      make_row("d4xz2", "D4xZ2", "<16,11>", "d4xz2.json", "[2,2,2,4]", "[2,2,2,2,2,2]", Unknown, 4, {2, 2, 2, 4, 4}),
      make_row("z2_4", "Z2^4", "<16,14>", "z2_4.json", "[2,2,2,2,2]", "[2,2,2,2,2]", Even, 4, {4, 4, 4, 4}),
      make_row("z3xz3", "Z3^2", "<9,2>", "z3xz3.json", "[3,3,3,3]", "[3,3,3,3]", Even, 2, {3, 3, 3, 3, 3}),
      make_row("z2_3", "Z2^3", "<8,5>", "z2_3.json", "[2,2,2,2,2]", "[2,2,2,2,2,2]", Unknown, 5, {2, 2, 2, 2, 4, 4}),
  };
  return rows;
}

json to_json(const Table1Row& row) {
  return json{{"id", row.id},
              {"group", row.group_name},
              {"catalog_id", row.catalog_id},
              {"group_file", row.group_file},
              {"sig1", row.sig1.periods()},
              {"sig2", row.sig2.periods()},
              {"parity", row.expected_parity == ExpectedParity::Even ? "even" : "?"},
              {"D", row.expected_D},
              {"H1", row.expected_H1}};
}

Table1Row table1_row_from_json(const json& j) {
  try {
    Table1Row row;
    row.id = j.at("id").get<std::string>();
    row.group_name = j.at("group").get<std::string>();
    row.catalog_id = j.value("catalog_id", "");
    row.group_file = j.at("group_file").get<std::string>();
    row.sig1 = Signature(j.at("sig1").get<std::vector<int>>());
    row.sig2 = Signature(j.at("sig2").get<std::vector<int>>());
    const auto parity = j.at("parity").get<std::string>();
    if (parity != "even" && parity != "?") throw InputError("row parity must be \"even\" or \"?\"");
    row.expected_parity = parity == "even" ? ExpectedParity::Even : ExpectedParity::Unknown;
    row.expected_D = j.at("D").get<long long>();
    row.expected_H1 = j.at("H1").get<std::vector<long long>>();
    return row;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad reference row: ") + e.what());
  }
}

std::vector<Table1Row> load_table1_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  const json& rows = doc.is_object() ? doc.at("rows") : doc;
  std::vector<Table1Row> out;
  for (const auto& r : rows) out.push_back(table1_row_from_json(r));
  return out;
}

std::vector<Table1Row> select_rows(const std::vector<Table1Row>& rows, const std::string& key) {
  std::vector<Table1Row> out;
  const std::string k = lower(key);
  for (const auto& row : rows) {
    if (lower(row.id) == k || lower(row.group_name) == k) out.push_back(row);
  }
  return out;
}

bool RowResult::passed() const {
  return error.empty() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const RowCheck& c) { return c.passed; });
}

RowResult verify_row(const Table1Row& row, const std::filesystem::path& data_dir, unsigned search_jobs) {
  using clock = std::chrono::steady_clock;
  RowResult r;
  r.row = row;
  try {
    const GroupTable group = build_group(load_group_file(data_dir / row.group_file));
    const auto n = static_cast<long long>(group.order());

    auto t0 = clock::now();
    r.witness = free_pair_exists(group, row.sig1, row.sig2, search_jobs);
    r.search_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    r.checks.push_back({"free_pair", r.witness.has_value(),
                        r.witness ? "disjoint sigma sets found" : "search space exhausted without a free pair"});
    if (!r.witness) return r;

    r.surface = surface_invariants(group, r.witness->first, r.witness->second);
    const auto& s = *r.surface;
    r.checks.push_back({"genus_product", (s.g1 - 1) * (s.g2 - 1) == n,
                        "(g1-1)(g2-1) = " + std::to_string((s.g1 - 1) * (s.g2 - 1)) + ", |G| = " + std::to_string(n)});
    r.checks.push_back({"K2_chi", s.K2 == 8 && s.chi == 1,
                        "K^2 = " + std::to_string(s.K2) + ", chi = " + std::to_string(s.chi)});
    r.checks.push_back({"moduli_dim", s.moduli_dim == row.expected_D,
                        "D = " + std::to_string(s.moduli_dim) + ", expected " + std::to_string(row.expected_D)});

    bool divides = true;
    for (int m : row.sig1.periods()) divides = divides && (s.g2 - 1) % m == 0;
    for (int m : row.sig2.periods()) divides = divides && (s.g1 - 1) % m == 0;
    r.checks.push_back({"multiplicity_divides_genus", divides, "T1 periods | g2-1 and T2 periods | g1-1"});

    r.parity = classify_parity(n, row.sig1, row.sig2);
    const bool parity_ok = (r.parity->verdict == ParityVerdict::Even) == (row.expected_parity == ExpectedParity::Even);
    r.checks.push_back({"parity", parity_ok,
                        std::string(to_string(r.parity->verdict)) + " via " + r.parity->rule + ", expected " +
                            (row.expected_parity == ExpectedParity::Even ? "even" : "?")});

    t0 = clock::now();
    r.h1 = fiber_product_h1(group, r.witness->first, r.witness->second);
    r.homology_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    AbelianInvariants expected{row.expected_H1, 0};
    r.checks.push_back({"h1", *r.h1 == expected, to_string(*r.h1) + ", expected " + to_string(expected)});
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<RowResult> verify_rows(const std::vector<Table1Row>& rows, const std::filesystem::path& data_dir,
                                   unsigned jobs) {
  std::vector<RowResult> results(rows.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) results[i] = verify_row(rows[i], data_dir);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) results[i] = verify_row(rows[i], data_dir);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

json to_json(const RowResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out{{"row", to_json(r.row)}, {"passed", r.passed()}};
  out["witness"] = r.witness ? json{{"V1", to_json(r.witness->first)}, {"V2", to_json(r.witness->second)}}
                             : json(nullptr);
  out["invariants"] = r.surface ? to_json(*r.surface) : json(nullptr);
  out["parity"] = r.parity ? to_json(*r.parity) : json(nullptr);
  out["h1"] = r.h1 ? to_json(*r.h1) : json(nullptr);
  out["checks"] = checks;
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

}  // namespace fqw
