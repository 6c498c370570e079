#include "nctoric/deltasystem.hpp"

#include "nctoric/error.hpp"
#include "nctoric/parallel.hpp"

#include <algorithm>

namespace nctoric {

namespace {

bool contains_word(const std::vector<ReducedWord>& ws, const ReducedWord& w) {
  return std::find(ws.begin(), ws.end(), w) != ws.end();
}

std::string word_list(const std::vector<ReducedWord>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : ", ") + to_string(w);
  return "<" + s + ">";
}

LatticeVector ray_sum(const Fan& fan, const ConeId& tau) {
  LatticeVector s = LatticeVector::Zero(fan.rank);
  for (int r : tau) s += fan.rays[static_cast<std::size_t>(r)];
  return s;
}

/// Lower charts from maximal generator lists: union over covering maximal
/// cones, then inverses of everything in tau^perp; the zero cone also gets
/// every letter.
AdmissibleSystem assemble(const Fan& fan, const std::map<ConeId, std::vector<ReducedWord>>& maximal,
                          std::vector<LiftEntry> lift_table, std::vector<ProvenanceEntry> provenance) {
  AdmissibleSystem sys;
  sys.fan = fan;
  sys.lift_table = std::move(lift_table);
  sys.provenance = std::move(provenance);
  std::vector<ConeId> lower;
  for (const auto& tau : fan.faces) {
    if (fan.is_maximal(tau)) {
      sys.chart.emplace(tau, compile_submonoid(fan.rank, maximal.at(tau)));
    } else {
      lower.push_back(tau);
    }
  }
  std::vector<SubmonoidFG> built(lower.size());
  std::vector<std::vector<ProvenanceEntry>> notes(lower.size());
  parallel_for(lower.size(), [&](std::size_t k) {
    const ConeId& tau = lower[k];
    std::vector<ReducedWord> gens;
    for (std::size_t i : fan.covering(tau))
      for (const auto& g : maximal.at(fan.max_cones[i]))
        if (!contains_word(gens, g)) gens.push_back(g);
    const std::size_t base = gens.size();
    for (std::size_t i = 0; i < base; ++i) {
      if (!in_perp(fan, tau, abelianize(gens[i]))) continue;
      ReducedWord inv = word_inv(gens[i]);
      if (contains_word(gens, inv)) continue;
      notes[k].push_back({tau, inv, "Lemma 2.2.8: inverse of a generator in tau^perp"});
      gens.push_back(std::move(inv));
    }
    if (tau.empty())
      for (int l = 1; l <= fan.rank; ++l)
        for (int s : {l, -l}) {
          ReducedWord z = ReducedWord::letter(fan.rank, s);
          if (contains_word(gens, z)) continue;
          notes[k].push_back({tau, z, "Thm 2.2.5(b): zero-cone chart is all of the group"});
          gens.push_back(std::move(z));
        }
    built[k] = compile_submonoid(fan.rank, std::move(gens));
  });
  for (std::size_t k = 0; k < lower.size(); ++k) {
    sys.chart.emplace(lower[k], std::move(built[k]));
    sys.provenance.insert(sys.provenance.end(), notes[k].begin(), notes[k].end());
  }
  return sys;
}

void validate_extras(const AdmissibleSystem& sys, const ConeWords& extra) {
  for (const auto& [cone, words] : extra) {
    if (!sys.fan.is_face(cone)) throw Error(ErrorKind::InvalidArgument, "extras on unknown cone " + to_string(cone));
    for (const auto& w : words) {
      if (w.rank() != sys.rank()) throw Error(ErrorKind::RankMismatch, "extra word " + to_string(w));
      if (!in_dual_cone(sys.fan, cone, abelianize(w)))
        throw Error(ErrorKind::ExtraOutsideDualCone, "extra " + to_string(w) + " on cone " + to_string(cone) +
                                                         " abelianizes to " + to_string(abelianize(w)) +
                                                         ", outside the dual cone");
    }
  }
}

}  // namespace

const SubmonoidFG& AdmissibleSystem::at(const ConeId& c) const {
  auto it = chart.find(c);
  if (it == chart.end()) throw Error(ErrorKind::InvalidArgument, "no chart for cone " + to_string(c));
  return it->second;
}

bool identical_generators(const AdmissibleSystem& a, const AdmissibleSystem& b) {
  if (!(a.fan == b.fan) || a.chart.size() != b.chart.size()) return false;
  for (const auto& [cone, s] : a.chart) {
    auto it = b.chart.find(cone);
    if (it == b.chart.end() || it->second.generators() != s.generators()) return false;
  }
  return true;
}

bool SofteningRecord::empty() const {
  return std::all_of(added.begin(), added.end(), [](const auto& kv) { return kv.second.empty(); });
}

AdmissibleSystem build_system(const Fan& fan, const ConeWords& lifts) {
  for (const auto& [cone, words] : lifts)
    if (!fan.is_maximal(cone)) throw Error(ErrorKind::NotMaximal, "lifts given for non-maximal cone " + to_string(cone));
  std::map<ConeId, std::vector<ReducedWord>> maximal;
  std::vector<LiftEntry> table;
  std::vector<ProvenanceEntry> provenance;
  for (const auto& sigma : fan.max_cones) {
    const auto duals = dual_generators(fan, sigma);
    std::vector<ReducedWord> words;
    auto it = lifts.find(sigma);
    if (it != lifts.end()) {
      if (it->second.size() != duals.size())
        throw Error(ErrorKind::BadLift, "cone " + to_string(sigma) + " needs " + std::to_string(duals.size()) + " lifts");
      words = it->second;
    } else {
      for (const auto& u : duals) words.push_back(canonical_lift(u));
    }
    for (std::size_t i = 0; i < duals.size(); ++i) {
      if (words[i].rank() != fan.rank || !same_vector(abelianize(words[i]), duals[i]))
        throw Error(ErrorKind::BadLift, "lift " + to_string(words[i]) + " on cone " + to_string(sigma) +
                                            " does not abelianize to " + to_string(duals[i]));
      table.push_back({sigma, duals[i], words[i]});
      provenance.push_back({sigma, words[i], "Thm 2.2.5(a): lift of a dual generator"});
    }
    maximal[sigma] = words;
  }
  return assemble(fan, maximal, std::move(table), std::move(provenance));
}

AdmissibleSystem complete_system(const Fan& fan, const std::map<ConeId, SubmonoidFG>& partial) {
  std::map<ConeId, std::vector<ReducedWord>> maximal;
  std::vector<LiftEntry> table;
  std::vector<ProvenanceEntry> provenance;
  for (const auto& sigma : fan.max_cones) {
    auto it = partial.find(sigma);
    if (it == partial.end())
      throw Error(ErrorKind::NotAdmissibleInput, "no chart supplied for maximal cone " + to_string(sigma));
    const auto& gens = it->second.generators();
    std::vector<LatticeVector> ab;
    for (const auto& g : gens) {
      if (g.rank() != fan.rank) throw Error(ErrorKind::RankMismatch, "generator " + to_string(g));
      ab.push_back(abelianize(g));
      if (!in_dual_cone(fan, sigma, ab.back()))
        throw Error(ErrorKind::NotAdmissibleInput, "cone " + to_string(sigma) + ": generator " + to_string(g) +
                                                       " abelianizes outside the dual cone");
    }
    for (const auto& u : dual_generators(fan, sigma)) {
      auto c = comm_monoid_member(ab, u, ray_sum(fan, sigma));
      if (!c)
        throw Error(ErrorKind::NotAdmissibleInput, "cone " + to_string(sigma) + ": dual generator " + to_string(u) +
                                                       " is not in the image of " + word_list(gens));
      ReducedWord lift(fan.rank);
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (long long k = 0; k < (*c)[i]; ++k) lift = word_mul(lift, gens[i]);
      table.push_back({sigma, u, lift});
    }
    for (const auto& g : gens) provenance.push_back({sigma, g, "Prop 2.2.9: supplied maximal chart"});
    maximal[sigma] = gens;
  }
  return assemble(fan, maximal, std::move(table), std::move(provenance));
}

AdmissibleSystem augment_system(const AdmissibleSystem& sys, const ConeWords& extra) {
  validate_extras(sys, extra);
  AdmissibleSystem out;
  out.fan = sys.fan;
  out.lift_table = sys.lift_table;
  out.provenance = sys.provenance;
  std::map<ConeId, std::vector<ReducedWord>> gens_of;
  for (const auto& tau : sys.fan.faces) {
    const SubmonoidFG& old = sys.at(tau);
    std::vector<ReducedWord> gens = old.generators();
    std::vector<ReducedWord> candidates;
    if (auto it = extra.find(tau); it != extra.end()) candidates = it->second;
    for (const auto& [gamma, gg] : gens_of)
      if (gamma.size() > tau.size() && is_subface(tau, gamma))
        candidates.insert(candidates.end(), gg.begin(), gg.end());

    SubmonoidFG current = old;
    std::vector<ReducedWord> batch;
    for (const auto& c : candidates)
      if (!current.accepts(c) && !contains_word(batch, c)) batch.push_back(c);
    for (const auto& w : batch) out.provenance.push_back({tau, w, "Prop 2.2.10: augmentation"});
    if (!batch.empty()) {
      gens.insert(gens.end(), batch.begin(), batch.end());
      current = compile_submonoid(sys.rank(), gens);
    }
    if (!sys.fan.is_maximal(tau)) {
      batch.clear();
      for (const auto& g : gens) {
        if (!in_perp(sys.fan, tau, abelianize(g))) continue;
        ReducedWord inv = word_inv(g);
        if (!current.accepts(inv) && !contains_word(batch, inv)) batch.push_back(inv);
      }
      for (const auto& w : batch)
        out.provenance.push_back({tau, w, "Prop 2.2.10: inverse of an augmented generator in tau^perp"});
      if (!batch.empty()) {
        gens.insert(gens.end(), batch.begin(), batch.end());
        current = compile_submonoid(sys.rank(), gens);
      }
    }
    gens_of[tau] = gens;
    out.chart.emplace(tau, std::move(current));
  }
  return out;
}

SofteningRecord softening_record(const AdmissibleSystem& small, const AdmissibleSystem& big) {
  SofteningRecord rec;
  rec.invariant_charts = small.fan.max_cones;
  for (const auto& [cone, s] : small.chart) {
    const auto& after = big.at(cone).generators();
    if (small.fan.is_maximal(cone)) {
      if (after != s.generators())
        throw Error(ErrorKind::MaximalChartTouched, "maximal chart " + to_string(cone) + " changed");
      continue;
    }
    if (!contains_submonoid(big.at(cone), s))
      throw Error(ErrorKind::InvalidArgument, "chart " + to_string(cone) + " shrank");
    for (const auto& g : after)
      if (!contains_word(s.generators(), g)) rec.added[cone].push_back(g);
  }
  return rec;
}

std::pair<AdmissibleSystem, SofteningRecord> soften(const AdmissibleSystem& sys, const ConeWords& extra) {
  for (const auto& [cone, words] : extra)
    if (sys.fan.is_maximal(cone) && !words.empty())
      throw Error(ErrorKind::MaximalChartTouched, "softening extras on maximal cone " + to_string(cone));
  AdmissibleSystem out = augment_system(sys, extra);
  SofteningRecord rec = softening_record(sys, out);
  return {std::move(out), std::move(rec)};
}

Report check_admissible(const AdmissibleSystem& sys) {
  const Fan& fan = sys.fan;
  std::vector<Report> per(fan.faces.size());
  parallel_for(fan.faces.size(), [&](std::size_t k) {
    const ConeId& tau = fan.faces[k];
    Report& r = per[k];
    const std::string locus = to_string(tau);
    auto it = sys.chart.find(tau);
    if (it == sys.chart.end()) {
      r.fail("Def 2.2.4(0)", locus, "no chart");
      return;
    }
    const SubmonoidFG& s = it->second;
    r.pass("Def 2.2.4(0)", locus, std::to_string(s.generators().size()) + " generators");

    std::vector<LatticeVector> ab;
    bool inside = true;
    for (const auto& g : s.generators()) {
      ab.push_back(abelianize(g));
      if (!in_dual_cone(fan, tau, ab.back())) {
        r.fail("Def 2.2.4(1)", locus, "generator abelianizes outside M_tau", to_string(g) + " -> " + to_string(ab.back()));
        inside = false;
      }
    }
    if (inside) {
      const ConeGenerators target = cone_monoid_generators(fan, tau);
      bool onto = true;
      for (std::size_t i = 0; i < target.gens.size(); ++i) {
        std::vector<LatticeVector> need{target.gens[i]};
        if (target.perp[i]) need.push_back(-target.gens[i]);
        for (const auto& u : need) {
          std::optional<std::vector<long long>> c;
          try {
            c = comm_monoid_member(ab, u, ray_sum(fan, tau));
          } catch (const Error& e) {
            r.fail("Def 2.2.4(1)", locus, e.what());
            onto = false;
            continue;
          }
          if (!c) {
            r.fail("Def 2.2.4(1)", locus, "M_tau element not in the image of the chart", to_string(u));
            onto = false;
          }
        }
      }
      if (onto) r.pass("Def 2.2.4(1)", locus, "chart surjects onto M_tau");
    }

    bool units = true;
    for (const auto& g : s.generators()) {
      if (!in_perp(fan, tau, abelianize(g))) continue;
      if (!is_unit_in(s, g)) {
        r.fail("Def 2.2.4(2)", locus, "generator over tau^perp is not invertible in the chart", to_string(g));
        units = false;
      }
    }
    if (units) r.pass("Def 2.2.4(2)", locus, "generators over tau^perp are units");

    for (const auto& sigma : fan.faces) {
      if (sigma.size() <= tau.size() || !is_subface(tau, sigma)) continue;
      auto up = sys.chart.find(sigma);
      if (up == sys.chart.end()) continue;
      bool restricts = true;
      for (const auto& g : up->second.generators())
        if (!s.accepts(g)) {
          r.fail("Def 2.2.1", to_string(tau) + "<" + to_string(sigma), "generator of the larger cone's chart missing from the face chart",
                 to_string(g));
          restricts = false;
        }
      if (restricts) r.pass("Def 2.2.1", to_string(tau) + "<" + to_string(sigma));
    }

    if (fan.is_maximal(tau) && s.generators().size() != static_cast<std::size_t>(fan.rank))
      r.info("Lemma 2.2.6", locus, "maximal chart has " + std::to_string(s.generators().size()) + " generators");
  });
  Report out("admissible system");
  for (const auto& r : per) out.merge(r);
  return out;
}

std::vector<LatticeVector> abelianized_chart(const AdmissibleSystem& sys, const ConeId& tau) {
  std::vector<LatticeVector> out;
  for (const auto& g : sys.at(tau).generators()) out.push_back(abelianize(g));
  return out;
}

}  // namespace nctoric
