#include <random>

#include "doctest.h"
#include "fqw/error.hpp"
#include "fqw/homology.hpp"
#include "fqw/io.hpp"
#include "fqw/table1.hpp"
#include "oracles.hpp"

using namespace fqw;

namespace {

AbelianInvariants snf(const oracle::Matrix& m, std::size_t cols) { return smith_normal_form(m, cols); }

}  // namespace

TEST_CASE("Smith normal form: small examples") {
  CHECK(snf({{1, 0}, {0, 1}}, 2) == AbelianInvariants{{}, 0});
  CHECK(snf({{2, 4}, {6, 8}}, 2) == AbelianInvariants{{2, 4}, 0});
  CHECK(snf({}, 3) == AbelianInvariants{{}, 3});
  CHECK(snf({{0, 0, 0}}, 3) == AbelianInvariants{{}, 3});
  CHECK(snf({{6, 0}, {0, 4}}, 2) == AbelianInvariants{{2, 12}, 0});
  CHECK(snf({{2, 0, 0}}, 3) == AbelianInvariants{{2}, 2});
  CHECK(to_string(AbelianInvariants{{2, 4}, 1}) == "Z2 x Z4 x Z^1");
  CHECK(to_string(AbelianInvariants{{}, 0}) == "0");
  CHECK(primary_decomposition({{2, 2, 2, 2, 4, 4}, 0}) == "(Z2)^4 x (Z4)^2");
  CHECK(primary_decomposition({{3, 3, 15}, 0}) == "(Z3)^3 x Z5");
  CHECK(AbelianInvariants{{2, 2, 2, 2, 4, 4}, 0}.torsion_order() == 256);
}

TEST_CASE("Smith normal form agrees with two oracles on random matrices") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> dim(1, 8), entry(-9, 9), sparse(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    oracle::Matrix m(r, std::vector<long long>(c));
    const bool thin = trial % 3 == 0;  // many zeros exercise rank deficiency
    for (auto& row : m)
      for (auto& x : row) x = thin && sparse(rng) ? 0 : entry(rng);
    CAPTURE(trial);
    const AbelianInvariants got = snf(m, c);
    const auto naive = oracle::cokernel_by_diagonalization(m, c);
    const auto minors = oracle::cokernel_by_minors(m, c);
    CHECK(got.factors == naive.factors);
    CHECK(got.free_rank == naive.free_rank);
    CHECK(got.factors == minors.factors);
    CHECK(got.free_rank == minors.free_rank);
    for (std::size_t i = 1; i < got.factors.size(); ++i) CHECK(got.factors[i] % got.factors[i - 1] == 0);

    std::vector<std::vector<BigInt>> big(r, std::vector<BigInt>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) big[i][j] = m[i][j];
    CHECK(smith_normal_form(big, c) == got);
  }
}

TEST_CASE("Smith normal form keeps exact values past 64 bits") {
  const BigInt p = BigInt(1) << 70;
  std::vector<std::vector<BigInt>> m{{p, 0}, {0, p * 3}};
  // Factors this large are out of range of long long and must be reported, not wrapped.
  CHECK_THROWS(smith_normal_form(m, 2));
  std::vector<std::vector<BigInt>> ok{{p, p + 1}, {p - 1, p}};  // det = 1
  CHECK(smith_normal_form(ok, 2) == AbelianInvariants{{}, 0});
}

TEST_CASE("polygonal presentations") {
  const Presentation p = polygonal_presentation(parse_signature("5,5,5"));
  CHECK(p.generator_count == 3);
  CHECK(p.relators.size() == 4);
  CHECK(abelianization(polygonal_presentation(parse_signature("2^5"))) == AbelianInvariants{{2, 2, 2, 2}, 0});
  CHECK(abelianization(polygonal_presentation(parse_signature("7"))) == AbelianInvariants{{}, 0});
  const auto m = relation_matrix(polygonal_presentation(parse_signature("2^5")));
  CHECK(m.size() == 6);
  const auto o = oracle::cokernel_by_diagonalization(m, 5);
  CHECK(o.factors == std::vector<long long>{2, 2, 2, 2});
  CHECK(o.free_rank == 0);
}

TEST_CASE("product presentation has the commutators") {
  const Presentation p = product_presentation(parse_signature("2,5,5"), parse_signature("3^4"));
  CHECK(p.generator_count == 7);
  CHECK(p.relators.size() == 4 + 5 + 12);
  // Z5 from the first factor, (Z3)^3 from the second.
  CHECK(abelianization(p) == AbelianInvariants{{3, 3, 15}, 0});
}

TEST_CASE("words and validation") {
  CHECK(freely_reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(inverse_word({1, -2, 3}) == Word{-3, 2, -1});
  CHECK(letter_generator(letter(4, true)) == 4);
  CHECK_THROWS_AS(validate(Presentation{2, {{1, 3}}}), InputError);
  CHECK_THROWS_AS(validate(Presentation{2, {{0}}}), InputError);
}

TEST_CASE("Reidemeister-Schreier on a known subgroup") {
  // Z = <x>, subgroup 3Z through the action on Z/3: free rank 1, no torsion.
  Presentation z{1, {}};
  CosetTable t{3, {{1, 2, 0}}};
  const SubgroupPresentation s = reidemeister_schreier(z, t);
  CHECK(abelianization(s.presentation) == AbelianInvariants{{}, 1});
  CHECK(s.transversal.size() == 3);

  // Z/6 = <x | x^6>, index-2 subgroup is Z/3.
  Presentation c6{1, {{1, 1, 1, 1, 1, 1}}};
  CosetTable t2{2, {{1, 0}}};
  CHECK(abelianization(reidemeister_schreier(c6, t2).presentation) == AbelianInvariants{{3}, 0});

  // Free group of rank 2, index-2 subgroup has rank 3.
  Presentation f2{2, {}};
  CosetTable t3{2, {{1, 0}, {0, 1}}};
  CHECK(abelianization(reidemeister_schreier(f2, t3).presentation) == AbelianInvariants{{}, 3});
}

TEST_CASE("coset tables") {
  CosetTable bad{2, {{0, 0}}};
  CHECK_THROWS_AS(bad.validate(), InputError);
  CosetTable split{4, {{1, 0, 3, 2}}};
  CHECK_FALSE(split.is_transitive());
}

TEST_CASE("H1 for the reference rows, with conjugate witnesses") {
  std::mt19937 rng(5);
  for (const auto& row : table1_reference()) {
    CAPTURE(row.id);
    const GroupFile f = load_group_file(oracle::data_dir() / row.group_file);
    const GroupTable g = build_group(f);
    const auto w = free_pair_exists(g, row.sig1, row.sig2);
    REQUIRE(w);

    const CosetTable cosets = fiber_product_cosets(g, w->first, w->second);
    CHECK(cosets.size == g.order());
    CHECK_NOTHROW(cosets.validate());
    CHECK(cosets.is_transitive());

    const AbelianInvariants h1 = fiber_product_h1(g, w->first, w->second);
    CHECK(h1 == AbelianInvariants{row.expected_H1, 0});
    BigInt prod = 1;
    for (long long x : row.expected_H1) prod *= x;
    CHECK(h1.torsion_order() == prod);
    for (std::size_t i = 1; i < h1.factors.size(); ++i) CHECK(h1.factors[i] % h1.factors[i - 1] == 0);

    std::uniform_int_distribution<Element> pick(1, static_cast<Element>(g.order() - 1));
    const Element h = pick(rng), k = pick(rng);
    CHECK(fiber_product_h1(g, conjugate_vector(g, h, w->first), conjugate_vector(g, h, w->second)) == h1);
    // Independent conjugations of the two vectors give the same surface up to isomorphism.
    CHECK(fiber_product_h1(g, conjugate_vector(g, h, w->first), conjugate_vector(g, k, w->second)) == h1);
  }
}

TEST_CASE("H1 rejects invalid pairs") {
  const GroupFile f = load_group_file(oracle::data_dir() / "z5xz5.json");
  const GroupTable g = build_group(f);
  const Signature s = parse_signature("5,5,5");
  const auto vs = enumerate_generating_vectors(g, s);
  REQUIRE(!vs.empty());
  CHECK_THROWS_AS(fiber_product_h1(g, vs[0], vs[0]), InputError);  // same vector: not free
  GeneratingVector broken = vs[0];
  broken.entries[0] = 0;
  CHECK_THROWS_AS(fiber_product_h1(g, broken, vs[1]), InputError);
}
