#pragma once

// Invertible sheaves as gluing data over an admissible system, the divisor
// pipeline, monomial sections and their twisted extensions, and the ideal
// data of subschemes cut out by sections.

#include "nctoric/deltasystem.hpp"
#include "nctoric/ncalgebra.hpp"
#include "nctoric/report.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace nctoric {

struct DivisorData {
  std::vector<long long> a;  // one coefficient per ray
};

struct MSigmaAssignment {
  std::map<ConeId, LatticeVector> m;
  std::map<ConeId, std::size_t> covering_choice;  // lower cone -> maximal cone index
};

/// Key (sigma, tau) with tau a proper face of sigma.
using Incidence = std::pair<ConeId, ConeId>;

struct Transition {
  GaussRational c{1};
  ReducedWord w;
};

struct GluingData {
  std::map<Incidence, Transition> transitions;

  const Transition& at(const ConeId& sigma, const ConeId& tau) const;
};

GluingData trivial_gluing(const Fan& fan);

Report check_gluing(const AdmissibleSystem& sys, const GluingData& g);

/// Candidate local rescalings (c_sigma, w_sigma) per cone.
using Trivialization = std::map<ConeId, Transition>;

/// Throws CandidateNotUnit when a candidate word is off sigma^perp or not a
/// unit of its chart.
bool sheaves_isomorphic(const AdmissibleSystem& sys, const GluingData& g1, const GluingData& g2,
                        const Trivialization& candidate);

/// Candidate forced by g1, g2 when maximal-cone words are e and the first
/// maximal cone has c = 1; nullopt when propagation is inconsistent.
std::optional<Trivialization> derive_isomorphism_candidate(const Fan& fan, const GluingData& g1,
                                                           const GluingData& g2);

struct Sheaf {
  AdmissibleSystem system;  // softened
  SofteningRecord record;
  GluingData gluing;
  MSigmaAssignment m;
  DivisorData divisor;
};

MSigmaAssignment solve_m_sigma(const Fan& fan, const DivisorData& d);
Sheaf sheaf_from_divisor(const AdmissibleSystem& sys, const DivisorData& d);

std::vector<LatticeVector> polytope_sections(const Fan& fan, const DivisorData& d);

struct TwistedSection {
  AdmissibleSystem system;
  GluingData gluing;
  std::map<ConeId, AlgElem> presentation;
  std::optional<LatticeVector> mprime;  // set for extended monomial sections
};

struct ExtendedSection {
  TwistedSection section;
  SofteningRecord record;  // relative to the input system
};

ExtendedSection extend_section(const AdmissibleSystem& sys, const GluingData& g, const MSigmaAssignment& m,
                               const LatticeVector& mprime);

Report check_twisted_section(const TwistedSection& s);

/// Same presentations over a softening of the section's system.
TwistedSection pullback(const TwistedSection& s, const AdmissibleSystem& softer);

/// One system softening every given section's system.
AdmissibleSystem common_softening(const std::vector<TwistedSection>& sections);

/// Chart-wise linear combination of sections over one common system.
TwistedSection combine_sections(const std::vector<TwistedSection>& sections,
                                const std::vector<GaussRational>& coeffs);

/// Per-cone ideal generators {r_{i,sigma}}.
using SubschemeIdeals = std::map<ConeId, std::vector<AlgElem>>;

SubschemeIdeals subscheme_from_sections(const std::vector<TwistedSection>& sections);

/// Ideal of one chart algebra: multipliers are restricted to chart(cone).
BoundedIdeal chart_ideal(const SubschemeIdeals& ideals, const AdmissibleSystem& sys, const ConeId& cone,
                         std::size_t bound);

}  // namespace nctoric
