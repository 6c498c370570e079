#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nctoric {

enum class ErrorKind {
  ParseError,
  RankMismatch,
  NonPrimitiveRay,
  NotIndexOne,
  MissingReferenceCone,
  NotAFan,
  NotMaximal,
  NoPositivityFunctional,
  BadLift,
  NotAdmissibleInput,
  ExtraOutsideDualCone,
  MaximalChartTouched,
  TargetExceedsBound,
  CandidateNotUnit,
  UnboundedPolytope,
  NotASection,
  MismatchedSystems,
  BadFactorization,
  NoFactorization,
  NotIdempotent,
  MorphismInvalid,
  PatternIncomplete,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Statement label that an error of this kind violates, for reports.
std::string_view clause_for(ErrorKind kind);

/// Every failure raised by the library carries one of the named error kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nctoric
