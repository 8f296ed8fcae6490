#include "fqw/group.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fqw/error.hpp"

namespace fqw {

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

void check_permutation(const Permutation& p, int degree) {
  if (static_cast<int>(p.size()) != degree) {
    throw InputError("permutation has " + std::to_string(p.size()) + " points, expected " +
                     std::to_string(degree));
  }
  std::vector<bool> hit(degree, false);
  for (int x : p) {
    if (x < 0 || x >= degree || hit[x]) throw InputError("permutation is not a bijection");
    hit[x] = true;
  }
}

}  // namespace

Permutation permutation_from_cycles(const std::vector<std::vector<int>>& cycles, int degree) {
  if (degree <= 0) throw InputError("degree must be positive");
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (int pt : cycle) {
      if (pt < 1 || pt > degree) {
        throw InputError("cycle point " + std::to_string(pt) + " outside 1.." +
                         std::to_string(degree));
      }
      if (used[pt - 1]) throw InputError("point " + std::to_string(pt) + " repeated in cycles");
      used[pt - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      p[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return p;
}

Permutation parse_cycles(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw InputError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw InputError("unexpected character in cycle notation: " + std::string(text));
      }
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      cycle.push_back(v);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return permutation_from_cycles(cycles, degree);
}

std::string cycles_to_string(const Permutation& perm) {
  std::ostringstream out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
      j = perm[j];
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

// ---------------------------------------------------------------------------

ElementSet::ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

void ElementSet::insert(Element e) { words_[e / 64] |= std::uint64_t{1} << (e % 64); }

bool ElementSet::contains(Element e) const {
  return e < universe_ && (words_[e / 64] >> (e % 64)) & 1u;
}

std::size_t ElementSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool ElementSet::intersects(const ElementSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  if (other.words_.size() > words_.size()) {
    words_.resize(other.words_.size(), 0);
    universe_ = other.universe_;
  }
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<Element>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupTable::GroupTable(std::string name, std::size_t order, std::vector<Element> table,
                       std::vector<Element> generators)
    : name_(std::move(name)), order_(order), mul_(std::move(table)), generators_(std::move(generators)) {
  if (order_ == 0) throw InputError("group order must be positive");
  if (mul_.size() != order_ * order_) throw InputError("multiplication table has wrong size");
  for (Element e : mul_) {
    if (e >= order_) throw InputError("multiplication table entry out of range");
  }
  for (Element g : generators_) {
    if (g >= order_) throw InputError("generator index out of range");
  }
  for (Element g = 0; g < order_; ++g) {
    if (mul(identity, g) != g || mul(g, identity) != g) {
      throw InputError("element 0 is not a two-sided identity");
    }
  }

  inverse_.assign(order_, identity);
  for (Element g = 0; g < order_; ++g) {
    bool found = false;
    for (Element h = 0; h < order_; ++h) {
      if (mul(g, h) == identity) {
        if (mul(h, g) != identity) throw InputError("left and right inverses differ");
        inverse_[g] = h;
        found = true;
        break;
      }
    }
    if (!found) throw InputError("element without inverse");
  }

  orders_.assign(order_, 0);
  for (Element g = 0; g < order_; ++g) {
    int k = 1;
    Element x = g;
    while (x != identity) {
      x = mul(x, g);
      if (++k > static_cast<int>(order_)) throw InputError("element of infinite order");
    }
    orders_[g] = k;
    by_order_[k].push_back(g);
  }

  class_id_.assign(order_, -1);
  for (Element g = 0; g < order_; ++g) {
    if (class_id_[g] >= 0) continue;
    const int id = static_cast<int>(classes_.size());
    std::vector<Element> cls;
    for (Element h = 0; h < order_; ++h) {
      Element c = conjugate(h, g);
      if (class_id_[c] < 0) {
        class_id_[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }

  if (subgroup_order(generators_) != order_) {
    throw InputError("generators do not generate the whole table");
  }
}

Element GroupTable::power(Element g, long long k) const {
  const int n = orders_[g];
  long long e = k % n;
  if (e < 0) e += n;
  Element x = identity;
  for (long long i = 0; i < e; ++i) x = mul(x, g);
  return x;
}

std::span<const Element> GroupTable::elements_of_order(int order) const {
  auto it = by_order_.find(order);
  if (it == by_order_.end()) return {};
  return it->second;
}

std::size_t GroupTable::subgroup_order(std::span<const Element> elems) const {
  std::vector<bool> in(order_, false);
  std::vector<Element> members{identity};
  in[identity] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element g : elems) {
      Element y = mul(members[i], g);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  return members.size();
}

std::map<int, int> GroupTable::order_histogram() const {
  std::map<int, int> hist;
  for (const auto& [k, elems] : by_order_) hist[k] = static_cast<int>(elems.size());
  return hist;
}

std::size_t GroupTable::center_order() const {
  std::size_t n = 0;
  for (const auto& cls : classes_) n += cls.size() == 1 ? 1 : 0;
  return n;
}

ElementSet GroupTable::derived_subgroup() const {
  std::vector<Element> commutators;
  ElementSet seen(order_);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      Element c = mul(mul(inverse_[a], inverse_[b]), mul(a, b));
      if (!seen.contains(c)) {
        seen.insert(c);
        commutators.push_back(c);
      }
    }
  }
  ElementSet sub(order_);
  std::vector<Element> members{identity};
  sub.insert(identity);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element g : commutators) {
      Element y = mul(members[i], g);
      if (!sub.contains(y)) {
        sub.insert(y);
        members.push_back(y);
      }
    }
  }
  return sub;
}

bool GroupTable::is_associative() const {
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      const Element ab = mul(a, b);
      for (Element c = 0; c < order_; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Permutation> enumerate_permutations(const PermutationGenerators& gens, std::size_t cap) {
  if (gens.degree <= 0) throw InputError("degree must be positive");
  for (const auto& p : gens.perms) check_permutation(p, gens.degree);

  Permutation id(gens.degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Element, PermHash> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens.perms) {
      Permutation y = compose(elems[i], g);
      if (index.contains(y)) continue;
      if (elems.size() >= cap) {
        throw CapExceeded("generated group exceeds order cap " + std::to_string(cap));
      }
      index.emplace(y, static_cast<Element>(elems.size()));
      elems.push_back(std::move(y));
    }
  }
  return elems;
}

GroupTable build_group(const PermutationGenerators& gens, std::string name, std::size_t cap) {
  const auto elems = enumerate_permutations(gens, cap);
  const std::size_t n = elems.size();
  std::unordered_map<Permutation, Element, PermHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elems[i], static_cast<Element>(i));

  std::vector<Element> mul(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(compose(elems[a], elems[b]));
  }
  std::vector<Element> generators;
  for (const auto& g : gens.perms) generators.push_back(index.at(g));
  return GroupTable(std::move(name), n, std::move(mul), std::move(generators));
}

int element_order(const GroupTable& group, Element g) { return group.element_order(g); }

ElementSet sigma_set(const GroupTable& group, std::span<const Element> entries) {
  ElementSet out(group.order());
  for (Element v : entries) {
    Element x = v;
    for (int k = 1; k < group.element_order(v); ++k, x = group.mul(x, v)) {
      for (Element h = 0; h < group.order(); ++h) out.insert(group.conjugate(h, x));
    }
  }
  return out;
}

ElementSet sigma_set_by_classes(const GroupTable& group, std::span<const Element> entries) {
  std::vector<bool> take(group.class_count(), false);
  for (Element v : entries) {
    for (int k = 1; k < group.element_order(v); ++k) take[group.class_of(group.power(v, k))] = true;
  }
  ElementSet out(group.order());
  for (std::size_t c = 0; c < take.size(); ++c) {
    if (!take[c]) continue;
    for (Element e : group.conjugacy_class(static_cast<int>(c))) out.insert(e);
  }
  return out;
}

}  // namespace fqw
