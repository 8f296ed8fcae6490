#pragma once

#include <filesystem>
#include <map>
#include "json.hpp"
#include <string>
#include <vector>

#include "fqw/group.hpp"
#include "fqw/homology.hpp"
#include "fqw/lattice.hpp"
#include "fqw/mds.hpp"
#include "fqw/parity.hpp"
#include "fqw/product.hpp"

namespace fqw {

using json = nlohmann::ordered_json;

// Brute-force invariants used to sanity-check shipped group data.
struct GroupFingerprint {
  std::size_t order = 0;
  std::map<int, int> element_orders;
  std::size_t center_order = 0;
  std::vector<long long> abelianization;  // invariant factors of G/[G,G]

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

// Group data file:
//   { "name": str, "claimed_catalog_id": str, "degree": int,
//     "generators": [ [[cycle], [cycle], ..], .. ],   (1-based points)
//     "fingerprint": { "order": int, "element_orders": {"k": count},
//                      "center_order": int, "abelianization": [int] } }   (optional)
struct GroupFile {
  std::string name;
  std::string claimed_catalog_id;
  PermutationGenerators generators;
  std::optional<GroupFingerprint> fingerprint;
};

GroupFile parse_group_file(const json& doc);
GroupFile load_group_file(const std::filesystem::path& path);
GroupTable build_group(const GroupFile& file, std::size_t cap = kDefaultGroupCap);

// Abelianization from the multiplication table: Z^G / <e_a + e_b - e_ab>.
AbelianInvariants group_abelianization(const GroupTable& group);
GroupFingerprint compute_fingerprint(const GroupTable& group);

// FQW_DATA_DIR if set, else the build-time default.
std::filesystem::path default_data_dir();

json to_json(const DivisorClass& d);
json to_json(const Cone2& c);
json to_json(const ConePair& c);
json to_json(const GroupFingerprint& f);
json to_json(const GeneratingVector& v);
json to_json(const ProductSurface& s);
json to_json(const ParityReport& r);
json to_json(const AbelianInvariants& inv);
json to_json(const SurfaceDescriptor& d);
json to_json(const Verdict& v);

DivisorClass divisor_from_json(const json& j);
SurfaceDescriptor descriptor_from_json(const json& j);
SurfaceDescriptor load_descriptor(const std::filesystem::path& path);

}  // namespace fqw
