#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nctoric/deltasystem.hpp"
#include "nctoric/error.hpp"
#include "support.hpp"

using namespace nctoric;
using namespace testing;

namespace {

const std::vector<RawFan> kStandard{fan_p1(), fan_p2(), fan_p1xp1(), fan_hirzebruch(1), fan_affine_plane(2)};

// Lifts for every maximal cone conjugated by z2: noncommutative but with
// the right abelianizations.
ConeWords conjugated_lifts(const Fan& fan) {
  ConeWords lifts;
  const ReducedWord c = ReducedWord::letter(fan.rank, fan.rank);
  for (const auto& s : fan.max_cones)
    for (const auto& u : dual_generators(fan, s))
      lifts[s].push_back(word_mul(word_mul(c, canonical_lift(u)), word_inv(c)));
  return lifts;
}

void check_inverse_system(const AdmissibleSystem& sys) {
  for (const auto& [tau, sigma] : sys.fan.incidences())
    for (const auto& g : sys.at(sigma).generators()) CHECK(sys.at(tau).accepts(g));
}

}  // namespace

TEST_CASE("build_system on the affine plane") {
  const Fan f = validate_fan(fan_affine_plane(2));
  const auto sys = build_system(f);
  CHECK(same_submonoid(sys.at({0, 1}), compile_submonoid(2, {w("z1", 2), w("z2", 2)})));
  CHECK(same_submonoid(sys.at({0}), compile_submonoid(2, {w("z1", 2), w("z2", 2), w("z2^-1", 2)})));
  CHECK(same_submonoid(sys.at({}), compile_submonoid(2, {w("z1", 2), w("z2", 2), w("z1^-1", 2), w("z2^-1", 2)})));
  CHECK(check_admissible(sys).status() == Status::Pass);
}

TEST_CASE("standard fans give admissible inverse systems") {
  for (const auto& raw : kStandard) {
    const Fan f = validate_fan(raw);
    for (const auto& lifts : {ConeWords{}, conjugated_lifts(f)}) {
      const auto sys = build_system(f, lifts);
      CHECK(sys.chart.size() == f.faces.size());
      const Report r = check_admissible(sys);
      INFO(r.to_text());
      CHECK(r.status() == Status::Pass);
      check_inverse_system(sys);
      for (const auto& s : f.max_cones) CHECK(sys.at(s).generators().size() == static_cast<std::size_t>(f.rank));
    }
  }
}

TEST_CASE("P1 charts are abelian and chart(0) is the whole group") {
  const auto sys = build_system(validate_fan(fan_p1()));
  CHECK(same_submonoid(sys.at({}), compile_submonoid(1, {w("z1", 1), w("z1^-1", 1)})));
}

TEST_CASE("build_system is deterministic") {
  const Fan f = validate_fan(fan_p2());
  const auto a = build_system(f, conjugated_lifts(f));
  const auto b = build_system(f, conjugated_lifts(f));
  CHECK(identical_generators(a, b));
}

TEST_CASE("bad lifts are rejected") {
  const Fan f = validate_fan(fan_p2());
  ConeWords lifts;
  lifts[{0, 1}] = {w("z1 z2", 2), w("z2", 2)};
  CHECK_THROWS_AS(build_system(f, lifts), Error);
}

TEST_CASE("tampering a ray chart breaks the unit condition") {
  const Fan f = validate_fan(fan_affine_plane(2));
  auto sys = build_system(f);
  sys.chart[{0}] = compile_submonoid(2, {w("z1", 2), w("z2", 2)});
  const Report r = check_admissible(sys);
  CHECK(r.status() == Status::Fail);
  CHECK(r.cites("Def 2.2.4(2)"));
}

TEST_CASE("complete_system") {
  const Fan f = validate_fan(fan_p2());
  const auto built = build_system(f);
  std::map<ConeId, SubmonoidFG> partial;
  for (const auto& s : f.max_cones) partial[s] = built.at(s);
  CHECK(identical_generators(complete_system(f, partial), built));

  auto extra = partial;
  extra[{0, 1}] = compile_submonoid(2, {w("z1", 2), w("z2", 2), w("z1 z2", 2)});
  const auto done = complete_system(f, extra);
  CHECK(check_admissible(done).ok());
  for (const auto& tau : f.faces)
    if (is_subface(tau, {0, 1})) CHECK(done.at(tau).accepts(w("z1 z2", 2)));

  auto missing = partial;
  missing[{0, 1}] = compile_submonoid(2, {w("z1", 2)});
  try {
    complete_system(f, missing);
    FAIL("accepted an inadmissible chart");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAdmissibleInput);
  }
}

TEST_CASE("augment_system") {
  const Fan f = validate_fan(fan_p2());
  const auto sys = build_system(f);
  CHECK(identical_generators(augment_system(sys, {}), sys));

  const ReducedWord x = w("z1 z2 z1^-1", 2);
  const auto aug = augment_system(sys, {{ConeId{}, {x}}});
  CHECK(aug.at({}).accepts(x));
  CHECK(aug.at({}).accepts(word_inv(x)));
  CHECK(check_admissible(aug).status() == Status::Pass);

  // arbitrary extras with valid abelianizations on every cone
  ConeWords extras;
  std::mt19937_64 rng(21);
  for (const auto& tau : f.faces) {
    for (int k = 0; k < 2; ++k) {
      ReducedWord cand = random_word(rng, 2, 4);
      if (!in_dual_cone(f, tau, abelianize(cand))) continue;
      extras[tau].push_back(cand);
    }
  }
  const auto big = augment_system(sys, extras);
  CHECK(check_admissible(big).status() == Status::Pass);
  check_inverse_system(big);
  for (const auto& [tau, ws] : extras)
    for (const auto& u : ws) CHECK(big.at(tau).accepts(u));
  // monotone
  for (const auto& tau : f.faces)
    for (const auto& g : sys.at(tau).generators()) CHECK(big.at(tau).accepts(g));

  try {
    augment_system(sys, {{ConeId{0, 1}, {w("z1^-1", 2)}}});
    FAIL("accepted an extra outside the dual cone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExtraOutsideDualCone);
  }
}

TEST_CASE("soften keeps maximal charts and records additions") {
  const Fan f = validate_fan(fan_p2());
  const auto sys = build_system(f);
  const auto [same, empty] = soften(sys, {});
  CHECK(empty.empty());
  CHECK(identical_generators(same, sys));

  const ReducedWord x = w("z2^-1 z1^-1 z2 z1", 2);  // abelianizes to 0
  const auto [soft, rec] = soften(sys, {{ConeId{1}, {x}}});
  for (const auto& s : f.max_cones) {
    CHECK(soft.at(s).generators() == sys.at(s).generators());
    CHECK(rec.added.count(s) == 0);
  }
  for (const auto& [cone, ws] : rec.added) CHECK((cone == ConeId{1} || cone.empty()));
  CHECK(soft.at({1}).accepts(x));
  CHECK(check_admissible(soft).status() == Status::Pass);
  CHECK(softening_record(sys, soft).added == rec.added);

  try {
    soften(sys, {{ConeId{0, 1}, {w("z1", 2)}}});
    FAIL("softening touched a maximal chart");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MaximalChartTouched);
  }
}

TEST_CASE("abelianized charts") {
  const Fan f = validate_fan(fan_p2());
  const auto sys = build_system(f);
  const auto u = abelianized_chart(sys, {1, 2});
  const auto d = dual_generators(f, {1, 2});
  CHECK(std::set<std::vector<long long>>{{u[0](0), u[0](1)}, {u[1](0), u[1](1)}} ==
        std::set<std::vector<long long>>{{d[0](0), d[0](1)}, {d[1](0), d[1](1)}});
  // the ray chart's abelianization generates the commutative chart monoid
  const auto ray = abelianized_chart(sys, {1});
  for (const auto& g : cone_monoid_generators(f, {1}).gens) CHECK(comm_monoid_member(ray, g).has_value());
}
