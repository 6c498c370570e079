#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nctoric/azumaya.hpp"
#include "nctoric/error.hpp"
#include "support.hpp"

#include <functional>

using namespace nctoric;
using namespace testing;

namespace {

using ImageFn = std::function<QIMatrix(const ReducedWord&)>;

QuasiHomChart make_chart(const AdmissibleSystem& sys, const ConeId& cone, const QIMatrix& e, const ImageFn& f) {
  QuasiHomChart c{cone, {}, e, {}};
  for (const auto& g : sys.at(cone).generators()) c.images[g] = f(g);
  return c;
}

QuasiHomChart zero_chart(const AdmissibleSystem& sys, const ConeId& cone, Eigen::Index r) {
  const QIMatrix z = zeros<GaussRational>(r, r);
  return make_chart(sys, cone, z, [&](const ReducedWord&) { return z; });
}

// z1 -> diag(a, 0) on {0}, z1^-1 -> diag(0, b) on {1}, zero on {}
MorphismData p1_brane(long long a, long long b) {
  MorphismData m{2, build_system(validate_fan(fan_p1())), {}};
  m.charts[{0}] = make_chart(m.system, {0}, diag({1, 0}), [&](const ReducedWord&) { return diag({a, 0}); });
  m.charts[{1}] = make_chart(m.system, {1}, diag({0, 1}), [&](const ReducedWord&) { return diag({0, b}); });
  m.charts[{}] = zero_chart(m.system, {}, 2);
  return m;
}

// ncA^n: one maximal cone with e = 1 and the given letter images; zero
// charts on proper faces
MorphismData affine_model(int n, const std::vector<QIMatrix>& letters) {
  const auto r = letters.front().rows();
  MorphismData m{static_cast<int>(r), build_system(validate_fan(fan_affine_plane(n))), {}};
  for (const auto& c : m.system.fan.faces) {
    if (m.system.fan.is_maximal(c)) {
      m.charts[c] = make_chart(m.system, c, identity<GaussRational>(r), [&](const ReducedWord& g) {
        return letters[static_cast<std::size_t>(g.letters().front() - 1)];
      });
    } else {
      m.charts[c] = zero_chart(m.system, c, r);
    }
  }
  return m;
}

QIMatrix random_invertible(std::mt19937_64& rng, Eigen::Index r) {
  while (true) {
    QIMatrix p = random_matrix(rng, r);
    if (!determinant(p).is_zero()) return p;
  }
}

Polynomial<GaussRational> poly(std::initializer_list<long long> c) {
  Polynomial<GaussRational> p;
  for (long long x : c) p.emplace_back(x);
  return p;
}

}  // namespace

TEST_CASE("subordination and corner inverses") {
  CHECK(subordinate(diag({1, 0}), identity<GaussRational>(2)));
  CHECK_FALSE(subordinate(identity<GaussRational>(2), diag({1, 0})));
  CHECK(subordinate(zeros<GaussRational>(2, 2), diag({0, 1})));
  const auto inv = corner_inverse(diag({4, 0}), diag({1, 0}));
  REQUIRE(inv.has_value());
  CHECK(exactly_equal(*inv, QIMatrix(diag({1, 0}) * *inv)));
  CHECK(exactly_equal(QIMatrix(*inv * diag({4, 0})), diag({1, 0})));
  CHECK_FALSE(corner_inverse(diag({0, 1}), diag({1, 0})).has_value());
}

TEST_CASE("subordination is transitive on random idempotent chains") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const QIMatrix p = random_invertible(rng, 3);
    const QIMatrix pi = *inverse(p);
    const QIMatrix e1 = p * diag({1, 0, 0}) * pi, e2 = p * diag({1, 1, 0}) * pi, e3 = identity<GaussRational>(3);
    REQUIRE(subordinate(e1, e2));
    REQUIRE(subordinate(e2, e3));
    CHECK(subordinate(e1, e3));
  }
}

TEST_CASE("idempotent system examples") {
  const Fan p1 = validate_fan(fan_p1());
  const auto two_point = idem_classify(p1, {{{0}, diag({1, 0})}, {{1}, diag({0, 1})}, {{}, diag({0, 0})}});
  CHECK(two_point.strong);
  CHECK(two_point.complete);
  CHECK(exactly_equal(two_point.reduced.at({0}), diag({1, 0})));
  CHECK(exactly_equal(two_point.reduced.at({}), diag({0, 0})));

  const auto stacked = idem_classify(p1, {{{0}, diag({1, 0})}, {{1}, diag({1, 0})}, {{}, diag({1, 0})}});
  CHECK(stacked.strong);
  CHECK_FALSE(stacked.complete);
  CHECK(is_zero_matrix(stacked.reduced.at({0})));
  CHECK(exactly_equal(stacked.reduced.at({}), diag({1, 0})));
  CHECK(stacked.findings.cites("Def 4.2.8"));

  const Fan plane = validate_fan(fan_affine_plane(2));
  std::map<ConeId, QIMatrix> single;
  for (const auto& c : plane.faces) single[c] = plane.is_maximal(c) ? diag({1, 1}) : diag({0, 0});
  const auto one = idem_classify(plane, single);
  CHECK(one.strong);
  CHECK(one.complete);

  const auto weak_only = idem_classify(p1, {{{0}, diag({1, 0})}, {{1}, diag({0, 1})}, {{}, identity<GaussRational>(2)}});
  CHECK_FALSE(weak_only.weak);
  CHECK(weak_only.findings.cites("Def 4.2.6(i)"));

  CHECK_THROWS_AS(idem_classify(p1, {{{0}, diag({2, 0})}, {{1}, diag({0, 1})}, {{}, diag({0, 0})}}), Error);
  CHECK_THROWS_AS(idem_classify(p1, {{{0}, diag({1, 0})}}), Error);
}

TEST_CASE("random strong systems in M4 reconstruct from orthogonal reduced idempotents") {
  const Fan f = validate_fan(fan_p2());
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> pick(-1, static_cast<int>(f.faces.size()) - 1);
  int completes = 0;
  for (int t = 0; t < 100; ++t) {
    // coordinate k belongs to the block of face owner[k], or to none
    std::vector<int> owner(4);
    for (auto& o : owner) o = pick(rng);
    const QIMatrix p = random_invertible(rng, 4);
    const QIMatrix pi = *inverse(p);
    auto block = [&](const std::function<bool(const ConeId&)>& keep) {
      QIMatrix d = zeros<GaussRational>(4, 4);
      for (int k = 0; k < 4; ++k)
        if (owner[static_cast<std::size_t>(k)] >= 0 && keep(f.faces[static_cast<std::size_t>(owner[static_cast<std::size_t>(k)])]))
          d(k, k) = GaussRational(1);
      return QIMatrix(p * d * pi);
    };
    std::map<ConeId, QIMatrix> e;
    for (const auto& s : f.faces) e[s] = block([&](const ConeId& rho) { return is_subface(rho, s); });
    const bool planted_complete = std::all_of(owner.begin(), owner.end(), [](int o) { return o >= 0; });
    completes += planted_complete;

    const IdemSystem sys = idem_classify(f, e);
    REQUIRE(sys.strong);
    CHECK(sys.complete == planted_complete);
    for (const auto& [a, ea] : sys.reduced) {
      CHECK(exactly_equal(ea, block([&](const ConeId& rho) { return rho == a; })));
      for (const auto& [b, eb] : sys.reduced)
        if (a != b) CHECK(is_zero_matrix(QIMatrix(ea * eb)));
    }
    for (const auto& s : f.faces) {
      QIMatrix sum = zeros<GaussRational>(4, 4);
      for (const auto& [rho, er] : sys.reduced)
        if (is_subface(rho, s)) sum += er;
      CHECK(exactly_equal(sum, e.at(s)));
    }
  }
  CHECK(completes > 0);
  CHECK(completes < 100);
}

TEST_CASE("quasi-homomorphism chart checks") {
  const auto sys = build_system(validate_fan(fan_affine_plane(2)));
  CHECK(check_quasi_hom(zero_chart(sys, {0, 1}, 2)).ok());

  std::mt19937_64 rng(3);
  const auto free = make_chart(sys, {0, 1}, identity<GaussRational>(2), [&](const ReducedWord&) { return random_matrix(rng, 2); });
  CHECK(check_quasi_hom(free).status() == Status::Pass);

  const auto leak = make_chart(sys, {0, 1}, diag({1, 0}), [&](const ReducedWord&) { return unit(2, 1, 1); });
  const Report r = check_quasi_hom(leak);
  CHECK(r.status() == Status::Fail);
  CHECK(r.cites("Def 4.2.1"));

  const QuasiHomChart chart = make_chart(sys, {0, 1}, identity<GaussRational>(2), [&](const ReducedWord& g) {
    return g == w("z1", 2) ? diag({2, 3}) : qi({{0, 1}, {1, 0}});
  });
  CHECK(exactly_equal(eval_in_chart(chart, sys.at({0, 1}), ReducedWord(2)), identity<GaussRational>(2)));
  CHECK(exactly_equal(eval_in_chart(chart, sys.at({0, 1}), w("z1", 2)), diag({2, 3})));
  CHECK(exactly_equal(eval_in_chart(chart, sys.at({0, 1}), w("z1^2", 2)), diag({4, 9})));
  CHECK(exactly_equal(eval_word(chart, w("z1 z2", 2), {{w("z1", 2)}, {w("z2", 2)}}), QIMatrix(diag({2, 3}) * qi({{0, 1}, {1, 0}}))));
  CHECK_THROWS_AS(eval_word(chart, w("z1 z2", 2), {{w("z2", 2)}, {w("z1", 2)}}), Error);
  CHECK_THROWS_AS(eval_in_chart(chart, sys.at({0, 1}), w("z1^-1", 2)), Error);
}

TEST_CASE("gluing pairs") {
  const auto sys = build_system(validate_fan(fan_p1()));
  const auto upper = make_chart(sys, {0}, identity<GaussRational>(2), [](const ReducedWord&) { return qi({{1, 1}, {0, 1}}); });
  CHECK(check_gluing_pair(sys, upper, zero_chart(sys, {}, 2)).ok());

  // e_tau = e_sigma with the images extended by inverses
  const auto lower = make_chart(sys, {}, identity<GaussRational>(2), [](const ReducedWord& g) {
    return g == w("z1", 1) ? qi({{1, 1}, {0, 1}}) : qi({{1, -1}, {0, 1}});
  });
  CHECK(check_gluing_pair(sys, upper, lower).status() == Status::Pass);

  const auto proj = make_chart(sys, {}, diag({1, 0}), [](const ReducedWord& g) { return diag({g == w("z1", 1) ? 1 : 1, 0}); });
  const Report r = check_gluing_pair(sys, upper, proj);
  CHECK(r.status() == Status::Fail);
  CHECK(r.cites("Def 4.2.3(b)"));
}

TEST_CASE("morphism verification examples") {
  const MorphismData brane = p1_brane(3, 5);
  const Report ok = verify_morphism(brane);
  INFO(ok.to_text());
  CHECK(ok.status() == Status::Pass);
  const auto basis = surrogate_basis(brane);
  CHECK(basis.size() == 2);

  MorphismData broken = brane;
  broken.charts.at({}).identity_image = identity<GaussRational>(2);
  const Report bad = verify_morphism(broken);
  CHECK(bad.status() == Status::Fail);
  CHECK(bad.cites("Def 4.2.9(ii)"));
  CHECK_THROWS_AS(surrogate_basis(broken), Error);

  std::mt19937_64 rng(4);
  const MorphismData generic = affine_model(2, {random_matrix(rng, 2), random_matrix(rng, 2)});
  CHECK(verify_morphism(generic).status() == Status::Pass);
  CHECK(surrogate_basis(generic).size() == 4);
}

TEST_CASE("surrogate of a zero morphism is spanned by the identity idempotents") {
  MorphismData m{2, build_system(validate_fan(fan_p1())), {}};
  m.charts[{0}] = make_chart(m.system, {0}, diag({1, 0}), [](const ReducedWord&) { return zeros<GaussRational>(2, 2); });
  m.charts[{1}] = make_chart(m.system, {1}, diag({0, 1}), [](const ReducedWord&) { return zeros<GaussRational>(2, 2); });
  m.charts[{}] = zero_chart(m.system, {}, 2);
  CHECK(verify_morphism(m).status() == Status::Pass);
  const auto basis = surrogate_basis(m);
  CHECK(basis.size() == 2);  // span{1, diag(1,0), diag(0,1)}
}

TEST_CASE("bounded kernels") {
  const MorphismData a1 = affine_model(1, {diag({1, 2})});
  const BoundedIdeal k = image_kernel_bounded(a1, {0}, 2);
  const AlgElem quad = parse_alg("z1^2 - 3*z1 + 2", 1);
  CHECK(bounded_ideal_member(k, quad).found());
  CHECK_FALSE(bounded_ideal_member(k, parse_alg("z1 - 1", 1)).found());

  // matrix point: z_ij -> e_ij
  std::vector<QIMatrix> letters;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) letters.push_back(unit(2, i, j));
  const MorphismData point = affine_model(4, letters);
  CHECK(verify_morphism(point).status() == Status::Pass);
  const BoundedIdeal kp = image_kernel_bounded(point, {0, 1, 2, 3}, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int i2 = 1; i2 <= 2; ++i2)
        for (int j2 = 1; j2 <= 2; ++j2) {
          AlgElem rel(ReducedWord(4, {(i - 1) * 2 + j, (i2 - 1) * 2 + j2}));
          if (j == i2) rel = rel - AlgElem(ReducedWord::letter(4, (i - 1) * 2 + j2));
          CHECK(bounded_ideal_member(kp, rel).found());
        }

  const BoundedIdeal kz = image_kernel_bounded(point, {0}, 1);
  CHECK(bounded_ideal_member(kz, parse_alg("z1", 4)).found());
}

TEST_CASE("A1 probes") {
  for (int r : {2, 3}) {
    const A1Probe p = a1_probe(unit(r, 0, 0));
    CHECK(p.minpoly == poly({0, -1, 1}));
    REQUIRE(p.roots.size() == 2);
    for (const auto& root : p.roots) {
      if (root.value == GaussRational(0)) CHECK(root.fiber_dimension == r * r - r);
      if (root.value == GaussRational(1)) CHECK(root.fiber_dimension == r);
    }
    CHECK(p.unsplit.size() <= 1);
    const A1Probe id = a1_probe(identity<GaussRational>(r));
    CHECK(id.minpoly == poly({-1, 1}));
    REQUIRE(id.roots.size() == 1);
    CHECK(id.roots.front().fiber_dimension == r * r);
  }
  const A1Probe nil = a1_probe(unit(2, 0, 1));
  CHECK(nil.minpoly == poly({0, 0, 1}));
  REQUIRE(nil.roots.size() == 1);
  CHECK(nil.roots.front().multiplicity == 2);

  const A1Probe rot = a1_probe(qi({{0, -1}, {1, 0}}));
  CHECK(rot.roots.size() == 2);
  const A1Probe irr = a1_probe(qi({{0, 2}, {1, 0}}));
  CHECK(irr.roots.empty());
  CHECK(irr.unsplit == poly({-2, 0, 1}));
}

TEST_CASE("seeded matrix models verify") {
  const auto plane = build_system(validate_fan(fan_affine_plane(2)));
  const auto p1 = build_system(validate_fan(fan_p1()));
  const std::map<ConeId, QIMatrix> pattern{{{0}, diag({1, 0})}, {{1}, diag({0, 1})}, {{}, diag({0, 0})}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(verify_morphism(sample_matrix_model(plane, 2, std::nullopt, seed)).status() == Status::Pass);
    CHECK(verify_morphism(sample_matrix_model(p1, 2, pattern, seed)).status() == Status::Pass);
  }
  const auto a = sample_matrix_model(plane, 3, std::nullopt, 7);
  const auto b = sample_matrix_model(plane, 3, std::nullopt, 7);
  CHECK(exactly_equal(a.charts.at({0, 1}).images.begin()->second, b.charts.at({0, 1}).images.begin()->second));

  const std::map<ConeId, QIMatrix> incomplete{{{0}, diag({1, 0})}, {{1}, diag({1, 0})}, {{}, diag({1, 0})}};
  CHECK_THROWS_AS(sample_matrix_model(p1, 2, incomplete, 0), Error);

  // r = 1 on P2: commutative points
  const auto p2 = build_system(validate_fan(fan_p2()));
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(verify_morphism(sample_matrix_model(p2, 1, std::nullopt, seed)).ok());
}
