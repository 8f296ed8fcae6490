#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "fqw/error.hpp"
#include "fqw/io.hpp"
#include "fqw/table1.hpp"
#include "oracles.hpp"

using namespace fqw;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("fqw_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("group file parsing") {
  const json doc = json::parse(R"({"name": "S3", "degree": 3, "generators": [[[1, 2, 3]], [[1, 2]]]})");
  const GroupFile f = parse_group_file(doc);
  CHECK(f.name == "S3");
  CHECK(f.claimed_catalog_id.empty());
  CHECK_FALSE(f.fingerprint);
  CHECK(build_group(f).order() == 6);

  CHECK_THROWS_AS(parse_group_file(json::parse(R"({"degree": 3, "generators": []})")), InputError);
  CHECK_THROWS_AS(parse_group_file(json::parse(R"({"name": "x", "degree": 3, "generators": [[[1, 4]]]})")),
                  InputError);
  CHECK_THROWS_AS(parse_group_file(json::parse(R"({"name": "x", "degree": "3", "generators": []})")), InputError);
  CHECK_THROWS_AS(load_group_file("/nonexistent/group.json"), InputError);
  CHECK_THROWS_AS(load_group_file(temp_file("bad.json", "{ not json")), InputError);
}

TEST_CASE("abelianization from the multiplication table") {
  auto ab = [](const char* file) {
    return group_abelianization(build_group(load_group_file(oracle::data_dir() / file))).factors;
  };
  CHECK(ab("a5.json").empty());
  CHECK(ab("s4.json") == std::vector<long long>{2});
  CHECK(ab("z5xz5.json") == std::vector<long long>{5, 5});
  CHECK(ab("g16.json") == std::vector<long long>{2, 4});
}

TEST_CASE("default data directory honours the environment") {
  ::setenv("FQW_DATA_DIR", "/tmp/somewhere", 1);
  CHECK(default_data_dir() == std::filesystem::path("/tmp/somewhere"));
  ::unsetenv("FQW_DATA_DIR");
  CHECK(std::filesystem::exists(default_data_dir() / "a5.json"));
}

TEST_CASE("descriptor JSON round trip") {
  SurfaceDescriptor d = shavel_descriptor(5, true);
  d.known_negative_curves = {{2, -1}, {-1, 2}};
  const json j = to_json(d);
  const SurfaceDescriptor back = descriptor_from_json(j);
  CHECK(back.name == d.name);
  CHECK(back.parity == d.parity);
  CHECK(back.characteristic == 5);
  CHECK(back.is_shavel_type);
  CHECK(back.p_inert_in_center_field);
  CHECK(back.known_negative_curves == d.known_negative_curves);

  CHECK_THROWS_AS(descriptor_from_json(json::array()), InputError);
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"parity": "sideways"})")), InputError);
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"parity": "even", "known_negative_curves": [[1]]})")),
                  InputError);
  CHECK_THROWS_AS(load_descriptor("/nonexistent.json"), InputError);
  const auto path = temp_file("desc.json", j.dump());
  CHECK(load_descriptor(path).known_negative_curves.size() == 2);
}

TEST_CASE("verdict JSON schema") {
  const json j = to_json(evaluate(shavel_descriptor(3, true)));
  CHECK(j["status"] == "MDS");
  CHECK(j["rules_fired"].size() == 2);
  CHECK(j["rules_fired"][0]["rule"] == "R4");
  CHECK(j["cones"]["nef"].is_array());
  CHECK(j["unresolved"] == "");
}

TEST_CASE("reference table JSON round trip") {
  json arr = json::array();
  for (const auto& row : table1_reference()) arr.push_back(to_json(row));
  const auto path = temp_file("ref.json", arr.dump());
  const auto rows = load_table1_reference(path);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == table1_reference()[i].id);
    CHECK(rows[i].sig1 == table1_reference()[i].sig1);
    CHECK(rows[i].expected_H1 == table1_reference()[i].expected_H1);
    CHECK(rows[i].expected_parity == table1_reference()[i].expected_parity);
  }
  const auto wrapped = temp_file("ref2.json", json{{"rows", arr}}.dump());
  CHECK(load_table1_reference(wrapped).size() == 12);
  CHECK_THROWS_AS(table1_row_from_json(json::parse(R"({"id": "x"})")), InputError);
  CHECK(select_rows(table1_reference(), "A5").size() == 3);
  CHECK(select_rows(table1_reference(), "Z5XZ5").size() == 1);
  CHECK(select_rows(table1_reference(), "nothing").empty());
}

TEST_CASE("reference table contents") {
  const auto& rows = table1_reference();
  REQUIRE(rows.size() == 12);
  const std::vector<long long> d{1, 1, 2, 3, 2, 0, 3, 2, 4, 4, 2, 5};
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].expected_D == d[i]);
  std::size_t even = 0;
  for (const auto& r : rows) even += r.expected_parity == ExpectedParity::Even;
  CHECK(even == 5);
}
