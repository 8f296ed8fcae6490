#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fqw/homology.hpp"
#include "fqw/io.hpp"
#include "fqw/parity.hpp"
#include "fqw/product.hpp"

namespace fqw {

enum class ExpectedParity { Even, Unknown };

// One line of the classification of unmixed isogenous products with p_g = q = 0.
struct Table1Row {
  std::string id;          // e.g. "a5-1", "z5xz5"
  std::string group_name;  // e.g. "A5"
  std::string catalog_id;  // e.g. "<60,5>"
  std::string group_file;  // file name inside the data directory
  Signature sig1;
  Signature sig2;
  ExpectedParity expected_parity = ExpectedParity::Unknown;
  long long expected_D = 0;
  std::vector<long long> expected_H1;  // invariant factors
};

const std::vector<Table1Row>& table1_reference();

json to_json(const Table1Row& row);
Table1Row table1_row_from_json(const json& j);
std::vector<Table1Row> load_table1_reference(const std::filesystem::path& path);

// Rows whose id or group name equals `key` (case-insensitive).
std::vector<Table1Row> select_rows(const std::vector<Table1Row>& rows, const std::string& key);

struct RowCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RowResult {
  Table1Row row;
  std::optional<FreePair> witness;
  std::optional<ProductSurface> surface;
  std::optional<ParityReport> parity;
  std::optional<AbelianInvariants> h1;
  std::vector<RowCheck> checks;
  std::string error;
  double search_seconds = 0;
  double homology_seconds = 0;

  bool passed() const;
};

// Finds a free witness pair and checks invariants, parity, D and H1 against the row.
RowResult verify_row(const Table1Row& row, const std::filesystem::path& data_dir, unsigned search_jobs = 1);

// Runs rows on up to `jobs` threads; results are in input order.
std::vector<RowResult> verify_rows(const std::vector<Table1Row>& rows, const std::filesystem::path& data_dir,
                                   unsigned jobs = 1);

// Timings are excluded so output is deterministic.
json to_json(const RowResult& r);

}  // namespace fqw
