#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fqw/io.hpp"
#include "fqw/table1.hpp"
#include "oracles.hpp"

using fqw::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fqw");
  std::ostringstream out, err;
  const int code = fqw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("fqw_cli_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("table1 verify: single row, human and JSON") {
  const Run r = run({"table1", "verify", "--row", "z5xz5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(Z5)^3") != std::string::npos);
  CHECK(r.out.find("1/1 rows pass") != std::string::npos);

  const Run j = run({"table1", "verify", "--row", "z5xz5", "--json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  const json& row = doc["rows"][0];
  CHECK(row["passed"] == true);
  CHECK(row["parity"]["verdict"] == "even");
  CHECK(row["h1"]["invariant_factors"] == json::array({5, 5, 5}));
  CHECK(row["invariants"]["moduli_dim"] == 0);
}

TEST_CASE("table1 verify: full run is deterministic across worker counts") {
  const Run a = run({"table1", "verify", "--json"});
  const Run b = run({"table1", "verify", "--json", "--jobs", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["passed"] == 12);
  CHECK(doc["total"] == 12);
}

TEST_CASE("table1 verify: corrupted reference fails that row only") {
  json arr = json::array();
  for (const auto& row : fqw::table1_reference()) {
    json j = fqw::to_json(row);
    if (row.id == "z5xz5") j["D"] = 1;
    arr.push_back(j);
  }
  const auto path = temp_file("corrupt.json", arr.dump());
  const Run r = run({"table1", "verify", "--reference", path.string(), "--json"});
  CHECK(r.code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"] == 11);
  for (const auto& row : doc["rows"]) {
    const bool beauville = row["row"]["id"] == "z5xz5";
    CHECK(row["passed"] == !beauville);
    if (beauville) {
      bool moduli_failed = false;
      for (const auto& c : row["checks"]) moduli_failed = moduli_failed || (c["name"] == "moduli_dim" && c["passed"] == false);
      CHECK(moduli_failed);
    }
  }
}

TEST_CASE("table1 verify: data directory override and missing data") {
  ::setenv("FQW_DATA_DIR", "/nonexistent-fqw-data", 1);
  const Run r = run({"table1", "verify", "--row", "z3xz3"});
  ::unsetenv("FQW_DATA_DIR");
  CHECK(r.code == 2);
  CHECK(r.err.find("missing group data file") != std::string::npos);

  ::setenv("FQW_DATA_DIR", oracle::data_dir().c_str(), 1);
  CHECK(run({"table1", "verify", "--row", "z3xz3"}).code == 0);
  ::unsetenv("FQW_DATA_DIR");
  CHECK(run({"--data-dir", oracle::data_dir().string(), "table1", "verify", "--row", "z2_3"}).code == 0);
  CHECK(run({"table1", "verify", "--row", "no-such-row"}).code == 2);
}

TEST_CASE("table1 reference dumps twelve rows") {
  const Run r = run({"table1", "reference"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["rows"].size() == 12);
}

TEST_CASE("enumerate") {
  const Run r = run({"enumerate", "--group", "a5", "--sig1", "2,5,5", "--sig2", "3^4", "--json", "--limit", "2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["group"] == "A5");
  CHECK(j["witness"].is_object());
  CHECK(j["invariants"]["g1"] == 4);
  CHECK(j["invariants"]["g2"] == 21);
  CHECK(j["vectors"]["sig1"].size() == 2);
  CHECK(j["timing"].is_null());
  CHECK(run({"enumerate", "--group", "a5", "--sig1", "2,5,5", "--sig2", "3^4", "--json"}).out ==
        run({"enumerate", "--group", "a5", "--sig1", "2,5,5", "--sig2", "3^4", "--json", "--jobs", "3"}).out);

  const Run t = run({"enumerate", "--group", "a5", "--sig1", "2,5,5", "--sig2", "3^4", "--timing"});
  CHECK(t.out.find("search time") != std::string::npos);

  // No free pair: every [2,5,5] vector holds an involution, and A5 has one class of them.
  const Run none = run({"enumerate", "--group", "a5", "--sig1", "2,5,5", "--sig2", "2,5,5"});
  CHECK(none.code == 1);

  CHECK(run({"enumerate", "--group", "a5", "--sig1", "2,3", "--sig2", "3^4"}).code == 2);  // genus < 2
  CHECK(run({"enumerate", "--group", "nope", "--sig1", "2,5,5", "--sig2", "3^4"}).code == 2);
  CHECK(run({"enumerate", "--group", "a5", "--sig1", "2,5,5"}).code == 2);
}

TEST_CASE("parity") {
  const Run r = run({"parity", "--order", "8", "--sig1", "2^5", "--sig2", "2^6", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out)["report"];
  CHECK(j["delta"] == json::array({1, 0}));
  CHECK(j["canonical_in_phi"] == json::array({"1", "2"}));
  CHECK(j["verdict"] == "undetermined");
  CHECK(run({"parity", "--order", "25", "--sig1", "5,5,5", "--sig2", "5,5,5"}).out.find("even") != std::string::npos);
  CHECK(run({"parity", "--order", "0", "--sig1", "5,5,5", "--sig2", "5,5,5"}).code == 2);
}

TEST_CASE("homology") {
  const Run r = run({"homology", "--group", "z2_4", "--sig1", "2^5", "--sig2", "2^5", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["invariant_factors"] == json::array({4, 4, 4, 4}));
  CHECK(j["order"] == "256");
  CHECK(j["matches_reference"] == true);

  const Run h = run({"homology", "--group", "z2_3", "--sig1", "2^5", "--sig2", "2^6"});
  CHECK(h.out.find("(Z2)^4 x (Z4)^2") != std::string::npos);

  // Not a reference row: nothing to compare.
  const Run other = run({"homology", "--group", "z5xz5", "--sig1", "5,5,5", "--sig2", "5^4", "--json"});
  CHECK(other.code == 0);
  CHECK(json::parse(other.out)["matches_reference"].is_null());
}

TEST_CASE("cones") {
  const Run r = run({"cones", "--form", "even", "--negatives=2,-1;-1,2", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["nef"] == json::array({json::array({2, 1}), json::array({1, 2})}));
  CHECK(j["dual"] == true);
  CHECK(run({"cones", "--form", "odd", "--negatives", "[[1,2]]"}).code == 0);
  CHECK(run({"cones", "--form", "even"}).out.find("(1,0), (0,1)") != std::string::npos);
  CHECK(run({"cones", "--form", "even", "--negatives=2,-1;3,-1"}).code == 2);
  CHECK(run({"cones", "--form", "sideways"}).code == 2);
  CHECK(run({"cones", "--form", "even", "--negatives", "1,x"}).code == 2);
}

TEST_CASE("mds-check") {
  const auto shavel0 = temp_file("shavel0.json", R"({"name": "shavel", "parity": "even", "characteristic": 0,
      "flags": {"is_shavel_type": true}})");
  const Run r = run({"mds-check", "--descriptor", shavel0.string(), "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verdict"]["status"] == "NotMDS");

  const auto shavel7 = temp_file("shavel7.json", R"({"parity": "even", "characteristic": 7,
      "flags": {"is_shavel_type": true, "p_inert_in_center_field": true}})");
  const Run p = run({"mds-check", "--descriptor", shavel7.string()});
  CHECK(p.code == 0);
  CHECK(p.out.find("MDS") != std::string::npos);
  CHECK(p.out.find("R4") != std::string::npos);

  const auto bad = temp_file("bad.json", R"({"parity": "even", "characteristic": 9})");
  CHECK(run({"mds-check", "--descriptor", bad.string()}).code == 2);
  CHECK(run({"mds-check", "--descriptor", "/nonexistent.json"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"table1"}).code == 2);
}
