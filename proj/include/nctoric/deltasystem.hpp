#pragma once

// Inverse Delta-systems of admissible submonoids: construction, completion,
// augmentation, softening and admissibility checks.

#include "nctoric/freeword.hpp"
#include "nctoric/report.hpp"
#include "nctoric/toricfan.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nctoric {

/// Words attached to cones, e.g. lifts or extras.
using ConeWords = std::map<ConeId, std::vector<ReducedWord>>;

struct LiftEntry {
  ConeId sigma;
  LatticeVector dual;  // u_i
  ReducedWord lift;    // its chosen preimage
};

struct ProvenanceEntry {
  ConeId cone;
  ReducedWord word;
  std::string source;
};

struct AdmissibleSystem {
  Fan fan;
  std::map<ConeId, SubmonoidFG> chart;
  std::vector<LiftEntry> lift_table;
  std::vector<ProvenanceEntry> provenance;

  int rank() const { return fan.rank; }
  const SubmonoidFG& at(const ConeId& c) const;
};

/// Structural equality: same fan and identical generator lists per cone.
bool identical_generators(const AdmissibleSystem& a, const AdmissibleSystem& b);

struct SofteningRecord {
  ConeWords added;
  std::vector<ConeId> invariant_charts;

  bool empty() const;
};

/// `lifts` maps a maximal cone to word lifts of its dual generators, in the
/// order returned by dual_generators. Missing cones use canonical lifts.
AdmissibleSystem build_system(const Fan& fan, const ConeWords& lifts = {});

AdmissibleSystem complete_system(const Fan& fan, const std::map<ConeId, SubmonoidFG>& partial);

AdmissibleSystem augment_system(const AdmissibleSystem& sys, const ConeWords& extra);

std::pair<AdmissibleSystem, SofteningRecord> soften(const AdmissibleSystem& sys, const ConeWords& extra);

/// Non-maximal charts of `big` contain those of `small` and maximal charts
/// agree exactly; the record lists what was added.
SofteningRecord softening_record(const AdmissibleSystem& small, const AdmissibleSystem& big);

Report check_admissible(const AdmissibleSystem& sys);

std::vector<LatticeVector> abelianized_chart(const AdmissibleSystem& sys, const ConeId& tau);

}  // namespace nctoric
