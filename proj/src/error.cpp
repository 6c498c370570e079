#include "nctoric/error.hpp"

namespace nctoric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorKind::NotIndexOne: return "NotIndexOne";
    case ErrorKind::MissingReferenceCone: return "MissingReferenceCone";
    case ErrorKind::NotAFan: return "NotAFan";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::NoPositivityFunctional: return "NoPositivityFunctional";
    case ErrorKind::BadLift: return "BadLift";
    case ErrorKind::NotAdmissibleInput: return "NotAdmissibleInput";
    case ErrorKind::ExtraOutsideDualCone: return "ExtraOutsideDualCone";
    case ErrorKind::MaximalChartTouched: return "MaximalChartTouched";
    case ErrorKind::TargetExceedsBound: return "TargetExceedsBound";
    case ErrorKind::CandidateNotUnit: return "CandidateNotUnit";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::MismatchedSystems: return "MismatchedSystems";
    case ErrorKind::BadFactorization: return "BadFactorization";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::MorphismInvalid: return "MorphismInvalid";
    case ErrorKind::PatternIncomplete: return "PatternIncomplete";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view clause_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::RankMismatch:
    case ErrorKind::NonPrimitiveRay:
    case ErrorKind::NotIndexOne:
    case ErrorKind::MissingReferenceCone:
    case ErrorKind::NotAFan:
    case ErrorKind::NotMaximal:
    case ErrorKind::NoPositivityFunctional: return "Assumption 2.2.2";
    case ErrorKind::BadLift:
    case ErrorKind::NotAdmissibleInput: return "Def 2.2.4";
    case ErrorKind::ExtraOutsideDualCone: return "Prop 2.2.10";
    case ErrorKind::MaximalChartTouched: return "Def 2.2.14";
    case ErrorKind::CandidateNotUnit: return "Lemma 3.4";
    case ErrorKind::UnboundedPolytope:
    case ErrorKind::NotASection: return "Prop 3.8";
    case ErrorKind::MismatchedSystems: return "Def 3.9";
    case ErrorKind::BadFactorization:
    case ErrorKind::NoFactorization: return "Def 4.2.3";
    case ErrorKind::NotIdempotent: return "Def 4.2.6";
    case ErrorKind::MorphismInvalid:
    case ErrorKind::PatternIncomplete: return "Def 4.2.9(ii)";
    default: return "input";
  }
}

}  // namespace nctoric
