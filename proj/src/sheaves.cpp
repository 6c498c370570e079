#include "nctoric/sheaves.hpp"

#include "nctoric/error.hpp"
#include "nctoric/feasibility.hpp"
#include "nctoric/parallel.hpp"

#include <algorithm>
#include <deque>

namespace nctoric {

namespace {

std::string pair_locus(const ConeId& sigma, const ConeId& tau) { return to_string(tau) + "<" + to_string(sigma); }

LatticeVector ray_sum(const Fan& fan, const ConeId& tau) {
  LatticeVector s = LatticeVector::Zero(fan.rank);
  for (int r : tau) s += fan.rays[static_cast<std::size_t>(r)];
  return s;
}

long long floor_of(const Rational& q) {
  const BigInt n = numerator(q);
  const BigInt d = denominator(q);
  BigInt f = n / d;
  if (f * d != n && n < 0) f -= 1;
  return f.convert_to<long long>();
}

long long ceil_of(const Rational& q) { return -floor_of(-q); }

bool same_gluing(const GluingData& a, const GluingData& b) {
  if (a.transitions.size() != b.transitions.size()) return false;
  for (const auto& [k, t] : a.transitions) {
    auto it = b.transitions.find(k);
    if (it == b.transitions.end() || it->second.c != t.c || it->second.w != t.w) return false;
  }
  return true;
}

}  // namespace

const Transition& GluingData::at(const ConeId& sigma, const ConeId& tau) const {
  auto it = transitions.find({sigma, tau});
  if (it == transitions.end())
    throw Error(ErrorKind::InvalidArgument, "no transition for " + pair_locus(sigma, tau));
  return it->second;
}

GluingData trivial_gluing(const Fan& fan) {
  GluingData g;
  for (const auto& [tau, sigma] : fan.incidences()) g.transitions[{sigma, tau}] = {GaussRational(1), ReducedWord(fan.rank)};
  return g;
}

Report check_gluing(const AdmissibleSystem& sys, const GluingData& g) {
  const Fan& fan = sys.fan;
  const auto inc = fan.incidences();
  std::vector<Report> per(inc.size());
  parallel_for(inc.size(), [&](std::size_t k) {
    const auto& [tau, sigma] = inc[k];
    Report& r = per[k];
    const std::string locus = pair_locus(sigma, tau);
    auto it = g.transitions.find({sigma, tau});
    if (it == g.transitions.end()) {
      r.fail("Lemma 3.4", locus, "missing transition");
      return;
    }
    const Transition& t = it->second;
    if (t.c.is_zero()) r.fail("Lemma 3.4(i)", locus, "transition scalar is zero");
    if (t.w.rank() != fan.rank) {
      r.fail("Lemma 3.4(i)", locus, "transition word has wrong rank", to_string(t.w));
      return;
    }
    if (is_unit_in(sys.at(tau), t.w)) {
      r.pass("Lemma 3.4(i)", locus);
    } else {
      r.fail("Lemma 3.4(i)", locus, "transition word is not a unit of the face chart", to_string(t.w));
    }
    const LatticeVector ab = abelianize(t.w);
    if (in_perp(fan, tau, ab)) {
      r.pass("Lemma 3.4(ii)", locus);
    } else {
      r.fail("Lemma 3.4(ii)", locus, "transition abelianizes off tau^perp", to_string(t.w) + " -> " + to_string(ab));
    }
    // chains rho < tau < sigma with this pair on top
    for (const auto& rho : fan.faces) {
      if (rho.size() >= tau.size() || !is_subface(rho, tau)) continue;
      auto lower = g.transitions.find({tau, rho});
      auto outer = g.transitions.find({sigma, rho});
      if (lower == g.transitions.end() || outer == g.transitions.end()) continue;
      const std::string chain = to_string(rho) + "<" + to_string(tau) + "<" + to_string(sigma);
      bool ok = true;
      if (outer->second.c != t.c * lower->second.c) {
        r.fail("Lemma 3.4(iii)", chain, "scalar cocycle broken",
               to_string(outer->second.c) + " != " + to_string(t.c) + " * " + to_string(lower->second.c));
        ok = false;
      }
      if (outer->second.w != word_mul(t.w, lower->second.w)) {
        r.fail("Lemma 3.4(iii)", chain, "word cocycle broken",
               to_string(outer->second.w) + " != " + to_string(t.w) + " . " + to_string(lower->second.w));
        ok = false;
      }
      if (ok) r.pass("Lemma 3.4(iii)", chain);
    }
  });
  Report out("gluing data");
  for (const auto& [key, t] : g.transitions) {
    const auto& [sigma, tau] = key;
    if (!fan.is_face(sigma) || !fan.is_face(tau) || tau.size() >= sigma.size() || !is_subface(tau, sigma))
      out.fail("Lemma 3.4", pair_locus(sigma, tau), "transition on a pair that is not a face incidence");
  }
  for (const auto& r : per) out.merge(r);
  return out;
}

bool sheaves_isomorphic(const AdmissibleSystem& sys, const GluingData& g1, const GluingData& g2,
                        const Trivialization& candidate) {
  const Fan& fan = sys.fan;
  for (const auto& sigma : fan.faces) {
    auto it = candidate.find(sigma);
    if (it == candidate.end()) throw Error(ErrorKind::CandidateNotUnit, "no candidate on " + to_string(sigma));
    const Transition& t = it->second;
    if (t.c.is_zero()) throw Error(ErrorKind::CandidateNotUnit, "zero scalar on " + to_string(sigma));
    if (!in_perp(fan, sigma, abelianize(t.w)))
      throw Error(ErrorKind::CandidateNotUnit, "candidate " + to_string(t.w) + " on " + to_string(sigma) +
                                                   " is off sigma^perp");
    if (!is_unit_in(sys.at(sigma), t.w))
      throw Error(ErrorKind::CandidateNotUnit, "candidate " + to_string(t.w) + " is not a unit of chart " +
                                                   to_string(sigma));
  }
  for (const auto& [tau, sigma] : fan.incidences()) {
    const Transition& a = g1.at(sigma, tau);
    const Transition& b = g2.at(sigma, tau);
    const Transition& cs = candidate.at(sigma);
    const Transition& ct = candidate.at(tau);
    if (b.c != cs.c.inverse() * a.c * ct.c) return false;
    if (b.w != word_mul(word_mul(word_inv(cs.w), a.w), ct.w)) return false;
  }
  return true;
}

std::optional<Trivialization> derive_isomorphism_candidate(const Fan& fan, const GluingData& g1,
                                                           const GluingData& g2) {
  Trivialization cand;
  std::map<ConeId, bool> has_c;
  for (const auto& sigma : fan.max_cones) cand[sigma] = {GaussRational(1), ReducedWord(fan.rank)};
  for (const auto& sigma : fan.faces) has_c[sigma] = false;
  has_c[fan.max_cones.front()] = true;
  const auto inc = fan.incidences();
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [tau, sigma] : inc) {
      const Transition& a = g1.at(sigma, tau);
      const Transition& b = g2.at(sigma, tau);
      if (b.c.is_zero() || a.c.is_zero()) return std::nullopt;
      if (has_c[sigma] && cand.count(sigma) && !has_c[tau]) {
        // b.c = cs^-1 a.c ct  =>  ct = cs b.c / a.c
        auto& ct = cand[tau];
        ct.c = cand[sigma].c * b.c / a.c;
        has_c[tau] = true;
        progress = true;
      } else if (has_c[tau] && !has_c[sigma]) {
        cand[sigma].c = a.c * cand[tau].c / b.c;
        has_c[sigma] = true;
        progress = true;
      }
    }
  }
  for (const auto& sigma : fan.faces) {
    if (fan.is_maximal(sigma)) continue;
    const auto i = fan.covering(sigma).front();
    const ConeId& up = fan.max_cones[i];
    // b.w = ws^-1 a.w wt  with ws = e  =>  wt = a.w^-1 b.w
    cand[sigma].w = word_mul(word_inv(g1.at(up, sigma).w), g2.at(up, sigma).w);
    if (!has_c[sigma]) return std::nullopt;
  }
  return cand;
}

MSigmaAssignment solve_m_sigma(const Fan& fan, const DivisorData& d) {
  if (d.a.size() != fan.rays.size())
    throw Error(ErrorKind::InvalidArgument, "divisor needs " + std::to_string(fan.rays.size()) + " coefficients");
  MSigmaAssignment out;
  for (const auto& sigma : fan.max_cones) {
    const auto u = dual_generators(fan, sigma);
    LatticeVector m = LatticeVector::Zero(fan.rank);
    for (std::size_t i = 0; i < sigma.size(); ++i) m -= d.a[static_cast<std::size_t>(sigma[i])] * u[i];
    for (int r : sigma)
      if (pairing(m, fan.rays[static_cast<std::size_t>(r)]) != -d.a[static_cast<std::size_t>(r)])
        throw Error(ErrorKind::InvalidArgument, "m_sigma does not solve the divisor on " + to_string(sigma));
    out.m[sigma] = m;
  }
  for (const auto& tau : fan.faces) {
    if (fan.is_maximal(tau)) continue;
    const std::size_t i = fan.covering(tau).front();
    out.covering_choice[tau] = i;
    out.m[tau] = out.m.at(fan.max_cones[i]);
  }
  return out;
}

Sheaf sheaf_from_divisor(const AdmissibleSystem& sys, const DivisorData& d) {
  const Fan& fan = sys.fan;
  Sheaf out;
  out.divisor = d;
  out.m = solve_m_sigma(fan, d);
  ConeWords extras;
  for (const auto& [tau, sigma] : fan.incidences()) {
    const ReducedWord w = word_mul(word_inv(canonical_lift(out.m.m.at(sigma))), canonical_lift(out.m.m.at(tau)));
    out.gluing.transitions[{sigma, tau}] = {GaussRational(1), w};
    if (w.is_identity()) continue;
    auto& ex = extras[tau];
    for (const auto& x : {w, word_inv(w)})
      if (std::find(ex.begin(), ex.end(), x) == ex.end()) ex.push_back(x);
  }
  auto [softened, record] = soften(sys, extras);
  out.system = std::move(softened);
  out.record = std::move(record);
  return out;
}

std::vector<LatticeVector> polytope_sections(const Fan& fan, const DivisorData& d) {
  if (d.a.size() != fan.rays.size())
    throw Error(ErrorKind::InvalidArgument, "divisor needs " + std::to_string(fan.rays.size()) + " coefficients");
  const auto n = static_cast<std::size_t>(fan.rank);
  std::vector<LinearConstraint> sys;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(fan.rays[r](static_cast<Eigen::Index>(i)));
    sys.push_back(ge(c, Rational(-d.a[r])));
  }
  std::vector<long long> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval iv = coordinate_range(sys, n, i);
    if (iv.empty) return {};
    if (!iv.bounded())
      throw Error(ErrorKind::UnboundedPolytope, "coordinate " + std::to_string(i + 1) + " is unbounded on P_D");
    lo[i] = ceil_of(*iv.lo);
    hi[i] = floor_of(*iv.hi);
    if (lo[i] > hi[i]) return {};
  }
  std::vector<LatticeVector> out;
  LatticeVector u(fan.rank);
  for (std::size_t i = 0; i < n; ++i) u(static_cast<Eigen::Index>(i)) = lo[i];
  while (true) {
    bool inside = true;
    for (std::size_t r = 0; r < fan.rays.size() && inside; ++r)
      inside = pairing(u, fan.rays[r]) >= -d.a[r];
    if (inside) out.push_back(u);
    std::size_t i = n;
    while (i-- > 0) {
      auto& x = u(static_cast<Eigen::Index>(i));
      if (x < hi[i]) {
        ++x;
        break;
      }
      x = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

ExtendedSection extend_section(const AdmissibleSystem& sys, const GluingData& g, const MSigmaAssignment& m,
                               const LatticeVector& mprime) {
  const Fan& fan = sys.fan;
  if (mprime.size() != fan.rank) throw Error(ErrorKind::RankMismatch, "m' has wrong length");
  for (const auto& sigma : fan.faces)
    if (!in_dual_cone(fan, sigma, mprime - m.m.at(sigma)))
      throw Error(ErrorKind::NotASection, to_string(mprime) + " is outside P_D (fails on cone " + to_string(sigma) + ")");

  std::map<ConeId, ReducedWord> r;
  for (const auto& sigma : fan.faces) {
    const auto& gens = sys.at(sigma).generators();
    std::vector<LatticeVector> ab;
    for (const auto& w : gens) ab.push_back(abelianize(w));
    const LatticeVector target = mprime - m.m.at(sigma);
    const auto c = comm_monoid_member(ab, target, ray_sum(fan, sigma));
    if (!c) throw Error(ErrorKind::NotASection, "no chart element over " + to_string(target) + " on " + to_string(sigma));
    ReducedWord word(fan.rank);
    for (std::size_t i = 0; i < gens.size(); ++i) word = word_mul(word, word_pow(gens[i], (*c)[i]));
    r.emplace(sigma, word);
  }

  ConeWords extras;
  for (const auto& [tau, sigma] : fan.incidences()) {
    const ReducedWord q = word_mul(word_mul(r.at(sigma), g.at(sigma, tau).w), word_inv(r.at(tau)));
    if (q.is_identity()) continue;
    auto& ex = extras[tau];
    for (const auto& x : {q, word_inv(q)})
      if (std::find(ex.begin(), ex.end(), x) == ex.end()) ex.push_back(x);
  }
  auto [softened, record] = soften(sys, extras);

  ExtendedSection out;
  out.section.system = std::move(softened);
  out.section.gluing = g;
  out.section.mprime = mprime;
  for (const auto& [sigma, w] : r) out.section.presentation.emplace(sigma, AlgElem(w));
  out.record = std::move(record);
  return out;
}

Report check_twisted_section(const TwistedSection& s) {
  const AdmissibleSystem& sys = s.system;
  const Fan& fan = sys.fan;
  Report out("twisted section");
  for (const auto& sigma : fan.faces) {
    auto it = s.presentation.find(sigma);
    if (it == s.presentation.end()) {
      out.fail("Def 3.6", to_string(sigma), "no presentation");
      continue;
    }
    bool inside = true;
    for (const auto& [w, c] : it->second.terms())
      if (!sys.at(sigma).accepts(w)) {
        out.fail("Def 3.6", to_string(sigma), "presentation word outside the chart", to_string(w));
        inside = false;
      }
    if (inside) out.pass("Def 3.6", to_string(sigma), "presentation lies in the chart algebra");
  }
  if (!out.ok()) return out;

  const auto inc = fan.incidences();
  std::vector<Report> per(inc.size());
  parallel_for(inc.size(), [&](std::size_t k) {
    const auto& [tau, sigma] = inc[k];
    const std::string locus = pair_locus(sigma, tau);
    const auto git = s.gluing.transitions.find({sigma, tau});
    if (git == s.gluing.transitions.end()) {
      per[k].fail("Def 3.6", locus, "no transition");
      return;
    }
    const Transition& t = git->second;
    const AlgElem h = alg_mul(s.presentation.at(sigma), AlgElem(t.w, t.c));
    const AlgElem& rt = s.presentation.at(tau);
    if (h.is_zero() || rt.is_zero()) {
      if (h.is_zero() && rt.is_zero()) {
        per[k].pass("Def 3.6", locus, "both sides vanish");
      } else {
        per[k].fail("Def 3.6", locus, "one side vanishes", to_string(h) + " vs " + to_string(rt));
      }
      return;
    }
    // A unit u with h = u * rt maps the first term of rt onto some term of h.
    const auto& [y0, b0] = *rt.terms().begin();
    for (const auto& [x, a] : h.terms()) {
      const ReducedWord w = word_mul(x, word_inv(y0));
      if (!is_unit_in(sys.at(tau), w)) continue;
      const GaussRational c = a / b0;
      if (alg_mul(AlgElem(w, c), rt) == h) {
        per[k].pass("Def 3.6", locus, "h(s_sigma) = (" + to_string(c) + ")*" + to_string(w) + " * s_tau");
        return;
      }
    }
    per[k].fail("Def 3.6", locus, "no unit relates h(s_sigma) and s_tau", to_string(h) + " vs " + to_string(rt));
  });
  for (const auto& r : per) out.merge(r);
  return out;
}

TwistedSection pullback(const TwistedSection& s, const AdmissibleSystem& softer) {
  softening_record(s.system, softer);  // throws unless softer softens s.system
  TwistedSection out = s;
  out.system = softer;
  return out;
}

AdmissibleSystem common_softening(const std::vector<TwistedSection>& sections) {
  if (sections.empty()) throw Error(ErrorKind::InvalidArgument, "no sections");
  const AdmissibleSystem& base = sections.front().system;
  ConeWords extras;
  for (const auto& s : sections) {
    if (!(s.system.fan == base.fan)) throw Error(ErrorKind::MismatchedSystems, "sections live on different fans");
    for (const auto& [cone, chart] : s.system.chart) {
      if (base.fan.is_maximal(cone)) {
        if (chart.generators() != base.at(cone).generators())
          throw Error(ErrorKind::MismatchedSystems, "maximal chart " + to_string(cone) + " differs between sections");
        continue;
      }
      auto& ex = extras[cone];
      for (const auto& g : chart.generators())
        if (!base.at(cone).accepts(g) && std::find(ex.begin(), ex.end(), g) == ex.end()) ex.push_back(g);
    }
  }
  return soften(base, extras).first;
}

TwistedSection combine_sections(const std::vector<TwistedSection>& sections, const std::vector<GaussRational>& coeffs) {
  if (sections.empty() || sections.size() != coeffs.size())
    throw Error(ErrorKind::InvalidArgument, "need one coefficient per section");
  TwistedSection out;
  out.system = sections.front().system;
  out.gluing = sections.front().gluing;
  for (const auto& sigma : out.system.fan.faces) out.presentation.emplace(sigma, AlgElem(out.system.rank()));
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& s = sections[i];
    if (!identical_generators(s.system, out.system))
      throw Error(ErrorKind::MismatchedSystems, "section " + std::to_string(i) + " lives on a different system");
    if (!same_gluing(s.gluing, out.gluing))
      throw Error(ErrorKind::MismatchedSystems, "section " + std::to_string(i) + " belongs to a different sheaf");
    for (auto& [sigma, r] : out.presentation) r = alg_add(r, alg_scale(s.presentation.at(sigma), coeffs[i]));
  }
  return out;
}

SubschemeIdeals subscheme_from_sections(const std::vector<TwistedSection>& sections) {
  SubschemeIdeals out;
  if (sections.empty()) return out;
  const AdmissibleSystem& base = sections.front().system;
  for (std::size_t i = 1; i < sections.size(); ++i)
    if (!identical_generators(sections[i].system, base))
      throw Error(ErrorKind::MismatchedSystems, "section " + std::to_string(i) + " lives on a different softening");
  for (const auto& sigma : base.fan.faces) {
    auto& gens = out[sigma];
    for (const auto& s : sections) gens.push_back(s.presentation.at(sigma));
  }
  return out;
}

BoundedIdeal chart_ideal(const SubschemeIdeals& ideals, const AdmissibleSystem& sys, const ConeId& cone,
                         std::size_t bound) {
  const int rank = sys.rank();
  auto it = ideals.find(cone);
  if (it == ideals.end()) throw Error(ErrorKind::InvalidArgument, "no ideal on cone " + to_string(cone));
  BoundedIdeal ideal;
  ideal.rank = rank;
  ideal.degree_bound = bound;
  ideal.ambient = sys.at(cone);
  for (const auto& g : it->second)
    if (!g.is_zero()) ideal.generators.push_back(g);
  return ideal;
}

}  // namespace nctoric
