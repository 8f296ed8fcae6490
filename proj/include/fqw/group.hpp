#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fqw {

// Index of an element in a GroupTable. Index 0 is always the identity.
using Element = std::uint32_t;

// Images of {0, .., degree-1}; perm[i] is the image of point i.
using Permutation = std::vector<int>;

struct PermutationGenerators {
  int degree = 0;
  std::vector<Permutation> perms;
};

// Parses "(1 2 3)(4 5)" style cycle notation (1-based points). "()" is the identity.
Permutation parse_cycles(std::string_view text, int degree);

// Builds a permutation from a list of 1-based cycles, rejecting repeated or
// out-of-range points.
Permutation permutation_from_cycles(const std::vector<std::vector<int>>& cycles, int degree);

std::string cycles_to_string(const Permutation& perm);

// Fixed-capacity set of group elements, stored as a bitset.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);

  void insert(Element e);
  bool contains(Element e) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool intersects(const ElementSet& other) const;
  ElementSet& operator|=(const ElementSet& other);
  std::vector<Element> elements() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// A finite group as a multiplication table. Immutable once built; all
// queries are const and safe to share across threads.
class GroupTable {
 public:
  static constexpr Element identity = 0;

  // Validates closure, identity and inverses; throws InputError otherwise.
  GroupTable(std::string name, std::size_t order, std::vector<Element> table,
             std::vector<Element> generators);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  std::span<const Element> generators() const { return generators_; }

  Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element power(Element g, long long k) const;
  // h * g * h^-1
  Element conjugate(Element h, Element g) const { return mul(mul(h, g), inverse_[h]); }

  int element_order(Element g) const { return orders_[g]; }
  int class_of(Element g) const { return class_id_[g]; }
  std::size_t class_count() const { return classes_.size(); }
  std::span<const Element> conjugacy_class(int id) const { return classes_[id]; }

  // Elements of a given order, ascending by index.
  std::span<const Element> elements_of_order(int order) const;

  // Number of elements in the subgroup generated by `elems`.
  std::size_t subgroup_order(std::span<const Element> elems) const;
  bool generates(std::span<const Element> elems) const { return subgroup_order(elems) == order_; }

  std::map<int, int> order_histogram() const;
  std::size_t center_order() const;
  // Elements of the derived subgroup [G,G].
  ElementSet derived_subgroup() const;

  // Exhaustive associativity check; O(n^3).
  bool is_associative() const;

 private:
  std::string name_;
  std::size_t order_;
  std::vector<Element> mul_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::vector<int> orders_;
  std::vector<int> class_id_;
  std::vector<std::vector<Element>> classes_;
  std::map<int, std::vector<Element>> by_order_;
};

inline constexpr std::size_t kDefaultGroupCap = 256;

// Closes the permutation group under multiplication. Elements are indexed in
// breadth-first order from the identity, trying generators in the given order.
// Products compose left to right: (p*q)(i) = q(p(i)).
GroupTable build_group(const PermutationGenerators& gens, std::string name = {},
                       std::size_t cap = kDefaultGroupCap);

// The permutation behind each table index, in the same BFS order build_group uses.
std::vector<Permutation> enumerate_permutations(const PermutationGenerators& gens,
                                                std::size_t cap = kDefaultGroupCap);

int element_order(const GroupTable& group, Element g);

// All conjugates of all powers of the entries, minus the identity.
ElementSet sigma_set(const GroupTable& group, std::span<const Element> entries);

// Same set, assembled as a union of whole conjugacy classes of powers.
ElementSet sigma_set_by_classes(const GroupTable& group, std::span<const Element> entries);

}  // namespace fqw
