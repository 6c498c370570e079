#pragma once

// Exact Fourier-Motzkin elimination over Q.

#include "nctoric/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nctoric {

enum class Sense { GreaterEqual, Greater, Equal };

/// coeffs . x  (>= | > | =)  bound
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational bound{0};
  Sense sense = Sense::GreaterEqual;

  bool satisfied_by(const std::vector<Rational>& x) const;
  std::string describe() const;
};

LinearConstraint ge(std::vector<Rational> coeffs, Rational bound);
LinearConstraint gt(std::vector<Rational> coeffs, Rational bound);
LinearConstraint eq(std::vector<Rational> coeffs, Rational bound);

/// Either a witness satisfying every constraint, or the variable-free
/// constraint the elimination ended in (e.g. "0 >= 1").
struct Feasibility {
  std::optional<std::vector<Rational>> witness;
  std::optional<LinearConstraint> contradiction;

  bool feasible() const { return witness.has_value(); }
};

Feasibility linear_feasible(const std::vector<LinearConstraint>& system, std::size_t dims);

/// Range of one coordinate over the feasible region. Missing ends are
/// unbounded. `empty` is set when the system is infeasible.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_strict = false;
  bool hi_strict = false;
  bool empty = false;

  bool bounded() const { return empty || (lo && hi); }
};

Interval coordinate_range(const std::vector<LinearConstraint>& system, std::size_t dims,
                          std::size_t coordinate);

}  // namespace nctoric
