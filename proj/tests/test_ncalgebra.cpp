#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nctoric/error.hpp"
#include "nctoric/ncalgebra.hpp"
#include "support.hpp"

using namespace nctoric;
using namespace testing;

namespace {

AlgElem el(const char* text, int rank) { return parse_alg(text, rank); }

// z_ij as letter (i-1)*r + j of rank r^2
ReducedWord zij(int r, int i, int j) { return ReducedWord::letter(r * r, (i - 1) * r + j); }

// matrix-point ideal: z_ij z_i'j' - delta_{j i'} z_ij' together with the
// commutators of letters
BoundedIdeal matrix_point_ideal(int r, std::size_t bound) {
  BoundedIdeal ideal{r * r, {}, bound, std::nullopt};
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      for (int k = 1; k <= r; ++k)
        for (int l = 1; l <= r; ++l) {
          AlgElem g(word_mul(zij(r, i, j), zij(r, k, l)));
          if (j == k) g = g - AlgElem(zij(r, i, l));
          ideal.generators.push_back(g);
        }
  for (int a = 1; a <= r * r; ++a)
    for (int b = a + 1; b <= r * r; ++b)
      ideal.generators.push_back(
          commutator(AlgElem(ReducedWord::letter(r * r, a)), AlgElem(ReducedWord::letter(r * r, b))));
  return ideal;
}

bool homogeneous(const AlgElem& a) {
  if (a.is_zero()) return true;
  const auto v = abelianize(a.terms().begin()->first);
  for (const auto& [word, c] : a.terms())
    if (abelianize(word) != v) return false;
  return true;
}

}  // namespace

TEST_CASE("algebra arithmetic examples") {
  CHECK(el("z1 + z2", 2) * el("z1^-1", 2) == el("1 + z2 z1^-1", 2));
  const AlgElem a = el("(3/2+1/2i)*z1 z2^-1 + 1", 2);
  CHECK(a * AlgElem::constant(2, 1) == a);
  CHECK(el("z1 z2", 2) * el("z2^-1 z1", 2) == el("z1^2", 2));
  CHECK(el("z2^-1 z1", 2) * el("z1 z2", 2) != el("z1^2", 2));
  CHECK((a - a).is_zero());
  CHECK(parse_alg(to_string(a), 2) == a);
  CHECK_THROWS_AS(el("z1", 1) * el("z1", 2), Error);
  CHECK_THROWS_AS(parse_alg("2*z3", 2), Error);
}

TEST_CASE("ring laws and grading on random elements") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_elem(rng, 2, 3, 3), b = random_elem(rng, 2, 3, 3), c = random_elem(rng, 2, 3, 3);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) * c == a * c + b * c);
    const AlgElem ab = a * b;
    for (const auto& [word, coeff] : ab.terms()) REQUIRE(!coeff.is_zero());
    REQUIRE(abelianize_elem(a * b) == laurent_mul(abelianize_elem(a), abelianize_elem(b)));
    REQUIRE(abelianize_elem(a + b) == abelianize_elem(alg_add(a, b)));

    // homogeneous components multiply into the summed degree
    const auto x = random_word(rng, 2, 3), y = random_word(rng, 2, 3);
    const AlgElem hx = AlgElem(x, random_gauss(rng)) + AlgElem(word_mul(word_mul(x, y), word_inv(y)), 1);
    const AlgElem hy(y, random_gauss(rng));
    REQUIRE(homogeneous(hx));
    const AlgElem p = hx * hy;
    REQUIRE(homogeneous(p));
    if (!p.is_zero()) REQUIRE(abelianize(p.terms().begin()->first) == abelianize(x) + abelianize(y));
  }
}

TEST_CASE("abelianize_elem examples") {
  CHECK(abelianize_elem(el("z1 z2 - z2 z1", 2)).empty());
  const auto p = abelianize_elem(el("1 + z2 z1^-1", 2));
  CHECK(p.size() == 2);
  LatticeVector m(2);
  m << -1, 1;
  CHECK(p.at(m) == GaussRational(1));
}

TEST_CASE("bounded ideal membership examples") {
  const BoundedIdeal z1{2, {el("z1", 2)}, 3, std::nullopt};
  const auto r = bounded_ideal_member(z1, el("z2 z1 z2", 2));
  REQUIRE(r.found());
  CHECK(r.certificate->reconstruct(z1) == el("z2 z1 z2", 2));

  const BoundedIdeal comm{2, {el("z1 z2 - z2 z1", 2)}, 4, std::nullopt};
  CHECK_FALSE(bounded_ideal_member(comm, el("z1", 2)).found());
  CHECK_THROWS_AS(bounded_ideal_member(z1, el("z1^4", 2)), Error);
}

TEST_CASE("matrix-point ideal contains 1 at bound 3") {
  const BoundedIdeal ideal = matrix_point_ideal(2, 3);
  const AlgElem one = AlgElem::constant(4, 1);
  const auto r = bounded_ideal_member(ideal, one);
  REQUIRE(r.found());
  CHECK(r.certificate->reconstruct(ideal) == one);
}

TEST_CASE("certificates reconstruct and persist at larger bounds") {
  std::mt19937_64 rng(17);
  int found = 0;
  for (int t = 0; t < 40; ++t) {
    BoundedIdeal ideal{2, {random_elem(rng, 2, 2, 1)}, 2, std::nullopt};
    if (ideal.generators[0].is_zero()) continue;
    const AlgElem target = AlgElem(random_word(rng, 2, 1)) * ideal.generators[0] * AlgElem(random_word(rng, 2, 1)) +
                           random_gauss(rng) * ideal.generators[0];
    if (target.max_length() > 3) continue;
    ideal.degree_bound = 3;
    const auto r = bounded_ideal_member(ideal, target);
    if (!r.found()) continue;
    ++found;
    CHECK(r.certificate->reconstruct(ideal) == target);
    ideal.degree_bound = 4;
    const auto r4 = bounded_ideal_member(ideal, target);
    REQUIRE(r4.found());
    CHECK(r4.certificate->reconstruct(ideal) == target);
  }
  CHECK(found > 10);
}

TEST_CASE("ambient restriction limits the multipliers") {
  const auto pos = compile_submonoid(2, {w("z1", 2), w("z2", 2)});
  BoundedIdeal ideal{2, {el("z1", 2)}, 2, pos};
  CHECK(bounded_ideal_member(ideal, el("z2 z1", 2)).found());
  CHECK_FALSE(bounded_ideal_member(ideal, el("1", 2)).found());
  ideal.ambient.reset();
  CHECK(bounded_ideal_member(ideal, el("1", 2)).found());
}

TEST_CASE("l-commutative generators") {
  const auto l1 = l_commutative_gens(2, 1, 2);
  REQUIRE(l1.generators.size() == 1);
  const AlgElem c = el("z1 z2 - z2 z1", 2);
  CHECK((l1.generators[0] == c || l1.generators[0] == alg_scale(c, -1)));

  CHECK(l_commutative_gens(1, 2, 3).generators.empty());

  // each [z_i, z_j z_k] lies in the ideal of the l = 1 commutators
  const auto l2 = l_commutative_gens(2, 2, 3);
  CHECK_FALSE(l2.generators.empty());
  BoundedIdeal base = l_commutative_gens(2, 1, 4);
  for (const auto& g : l2.generators) {
    const auto r = bounded_ideal_member(base, g);
    REQUIRE(r.found());
    CHECK(r.certificate->reconstruct(base) == g);
  }
}

TEST_CASE("words_up_to") {
  CHECK(words_up_to(2, 0).size() == 1);
  CHECK(words_up_to(2, 1).size() == 5);
  CHECK(words_up_to(2, 2).size() == 1 + 4 + 12);
}
