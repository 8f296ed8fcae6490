#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "fqw/group.hpp"
#include "fqw/product.hpp"

namespace fqw {

using BigInt = boost::multiprecision::cpp_int;

// A word is a sequence of letters: +(g+1) for generator g, -(g+1) for its inverse.
using Word = std::vector<int>;

inline int letter(int generator, bool inverse = false) { return inverse ? -(generator + 1) : generator + 1; }
inline int letter_generator(int l) { return (l > 0 ? l : -l) - 1; }

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;
};

// Throws InputError if a relator uses a generator outside range.
void validate(const Presentation& pres);

Word inverse_word(const Word& w);
Word freely_reduce(const Word& w);

// Torsion invariant factors d_1 | d_2 | ... (all >= 2) plus the free rank.
struct AbelianInvariants {
  std::vector<long long> factors;
  long long free_rank = 0;

  BigInt torsion_order() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// "Z2 x Z4 x Z^1" style, invariant-factor form; "0" for the trivial group.
std::string to_string(const AbelianInvariants& inv);
// Primary decomposition grouped by prime power, e.g. "(Z2)^4 x (Z4)^2".
std::string primary_decomposition(const AbelianInvariants& inv);

// <x_1..x_s | x_i^{m_i}, x_1 x_2 .. x_s>
Presentation polygonal_presentation(const Signature& sig);

// Direct product of two polygonal groups: generators x_1..x_s then y_1..y_t,
// both relator sets, and the commutators [x_i, y_j].
Presentation product_presentation(const Signature& sig1, const Signature& sig2);

// Right action of each generator on a finite set of cosets; coset 0 holds the subgroup.
struct CosetTable {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> action;  // action[gen][coset]

  // Throws InputError unless every generator acts as a permutation of `size` cosets.
  void validate() const;
  bool is_transitive() const;
};

struct SubgroupPresentation {
  Presentation presentation;
  // (coset, generator) label of each Schreier generator.
  std::vector<std::pair<std::size_t, int>> generator_labels;
  // Word in the parent generators representing each coset.
  std::vector<Word> transversal;
};

// Reidemeister-Schreier rewriting for the stabilizer of coset 0, with the
// breadth-first Schreier tree (generators tried in index order) as transversal.
SubgroupPresentation reidemeister_schreier(const Presentation& pres, const CosetTable& table);

// Exponent-sum matrix: one row per relator, one column per generator.
std::vector<std::vector<long long>> relation_matrix(const Presentation& pres);

// Cokernel of the row space: Z^cols / <rows>.
AbelianInvariants smith_normal_form(const std::vector<std::vector<long long>>& matrix, std::size_t cols);
AbelianInvariants smith_normal_form(const std::vector<std::vector<BigInt>>& matrix, std::size_t cols);

AbelianInvariants abelianization(const Presentation& pres);

// The coset table of the fibre-product subgroup {(a,b) : phi1(a) = phi2(b)} inside the
// product presentation, cosets labelled by the elements of G.
CosetTable fiber_product_cosets(const GroupTable& group, const GeneratingVector& v1, const GeneratingVector& v2);

// H_1((C1 x C2)/G, Z). Throws InvariantViolation on non-transitive coset action or
// positive free rank.
AbelianInvariants fiber_product_h1(const GroupTable& group, const GeneratingVector& v1, const GeneratingVector& v2);

}  // namespace fqw
