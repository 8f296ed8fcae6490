#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fqw/group.hpp"

namespace fqw {

// Branching periods [m_1, .., m_s] of a G-cover C -> P^1, non-decreasing, each >= 2.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> periods);

  const std::vector<int>& periods() const { return periods_; }
  std::size_t size() const { return periods_.size(); }
  int operator[](std::size_t i) const { return periods_[i]; }

  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<int> periods_;
};

// Accepts "2,5,5", "[2,5,5]", "2 5 5" and exponent shorthand such as "2^6" or "[2,2^4,4]".
Signature parse_signature(std::string_view text);

// A spherical system of generators: entries of the given orders, product 1, generating G.
struct GeneratingVector {
  std::vector<Element> entries;
  Signature signature;

  friend bool operator==(const GeneratingVector&, const GeneratingVector&) = default;
};

// Which generating-vector condition fails, or nullopt when all hold.
std::optional<std::string> generating_vector_defect(const GroupTable& group, const GeneratingVector& v);

// Genus g of C with 2g - 2 = |G| (-2 + sum(1 - 1/m_j)). Throws ParityViolation when the
// right side is not an even integer, InputError when negative, and InputError for
// g <= 1 when `require_general_type` is set.
long long rh_genus(long long order, const Signature& sig, bool require_general_type = false);

struct EnumerationOptions {
  std::optional<std::size_t> limit;
  // Worker threads splitting the search over the first entry. Output order is independent of it.
  unsigned jobs = 1;
};

// Visits every generating vector for `sig` up to simultaneous conjugation, each as the
// lexicographically least member of its conjugation orbit, in lexicographic order.
// The visitor returns false to stop early.
void for_each_generating_vector(const GroupTable& group, const Signature& sig,
                                const std::function<bool(const GeneratingVector&)>& visit);

std::vector<GeneratingVector> enumerate_generating_vectors(const GroupTable& group, const Signature& sig,
                                                           const EnumerationOptions& options = {});

// Lexicographically least simultaneous conjugate h V h^-1.
GeneratingVector canonical_conjugate(const GroupTable& group, const GeneratingVector& v);

GeneratingVector conjugate_vector(const GroupTable& group, Element h, const GeneratingVector& v);

struct FreePair {
  GeneratingVector first;
  GeneratingVector second;
};

struct FreePairSearch {
  std::optional<FreePair> witness;
  std::size_t first_vectors = 0;    // canonical vectors visited for sig1
  std::size_t second_vectors = 0;   // canonical vectors visited for sig2
  std::size_t first_sigma_sets = 0;
  std::size_t second_sigma_sets = 0;
};

// Searches for V1, V2 with disjoint sigma sets. The witness is the earliest V1 that
// admits a partner, paired with its earliest partner.
FreePairSearch search_free_pair(const GroupTable& group, const Signature& sig1, const Signature& sig2,
                                unsigned jobs = 1);

std::optional<FreePair> free_pair_exists(const GroupTable& group, const Signature& sig1,
                                         const Signature& sig2, unsigned jobs = 1);

struct ProductSurface {
  std::string group_name;
  std::size_t group_order = 0;
  GeneratingVector first;
  GeneratingVector second;
  long long g1 = 0;
  long long g2 = 0;
  long long K2 = 0;
  long long chi = 0;
  long long c2 = 0;
  long long moduli_dim = 0;
};

// Checks the pair, derives genera and Chern numbers. Throws InvariantViolation naming
// the failed condition.
ProductSurface surface_invariants(const GroupTable& group, const GeneratingVector& v1,
                                  const GeneratingVector& v2);

}  // namespace fqw
