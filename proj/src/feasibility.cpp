#include "nctoric/feasibility.hpp"

#include <map>
#include <sstream>

namespace nctoric {

namespace {

BigInt floor_q(const Rational& q) {
  const BigInt n = numerator(q);
  const BigInt d = denominator(q);
  BigInt f = n / d;
  if (f * d != n && n < 0) f -= 1;
  return f;
}

bool all_zero(const LinearConstraint& c) {
  for (const auto& a : c.coeffs)
    if (a != 0) return false;
  return true;
}

bool constant_holds(const LinearConstraint& c) {
  switch (c.sense) {
    case Sense::GreaterEqual: return 0 >= c.bound;
    case Sense::Greater: return 0 > c.bound;
    case Sense::Equal: return c.bound == 0;
  }
  return false;
}

void normalize(LinearConstraint& c) {
  for (const auto& a : c.coeffs) {
    if (a == 0) continue;
    Rational s = a < 0 ? Rational(-a) : a;
    if (c.sense == Sense::Equal) s = a;
    for (auto& x : c.coeffs) x /= s;
    c.bound /= s;
    return;
  }
}

std::string key(const LinearConstraint& c) {
  std::string k = std::to_string(static_cast<int>(c.sense));
  for (const auto& a : c.coeffs) k += "," + a.str();
  return k + "|" + c.bound.str();
}

/// Normalizes and dedupes; returns false when a constant constraint fails,
/// storing it in `bad`.
bool tidy(std::vector<LinearConstraint>& sys, std::optional<LinearConstraint>& bad) {
  std::map<std::string, LinearConstraint> seen;
  for (auto& c : sys) {
    normalize(c);
    if (all_zero(c)) {
      if (!constant_holds(c)) {
        bad = c;
        return false;
      }
      continue;
    }
    seen.emplace(key(c), c);
  }
  sys.clear();
  for (auto& [k, c] : seen) sys.push_back(std::move(c));
  return true;
}

struct Level {
  std::vector<LinearConstraint> system;
  std::optional<LinearConstraint> definition;
};

struct Elimination {
  std::vector<Level> levels;  // levels[k]: system in x_0..x_k, before x_k goes
  std::vector<LinearConstraint> rest;
  std::optional<LinearConstraint> contradiction;
};

Elimination eliminate(std::vector<LinearConstraint> sys, std::size_t dims, std::size_t keep) {
  Elimination out;
  out.levels.resize(dims);
  if (!tidy(sys, out.contradiction)) return out;
  for (std::size_t k = dims; k-- > keep;) {
    out.levels[k].system = sys;
    std::vector<LinearConstraint> next;
    const LinearConstraint* pivot = nullptr;
    for (const auto& c : sys)
      if (c.sense == Sense::Equal && c.coeffs[k] != 0) {
        pivot = &c;
        break;
      }
    if (pivot) {
      out.levels[k].definition = *pivot;
      for (const auto& c : sys) {
        if (&c == pivot) continue;
        LinearConstraint d = c;
        if (d.coeffs[k] != 0) {
          const Rational f = d.coeffs[k] / pivot->coeffs[k];
          for (std::size_t i = 0; i < dims; ++i) d.coeffs[i] -= f * pivot->coeffs[i];
          d.bound -= f * pivot->bound;
        }
        next.push_back(std::move(d));
      }
    } else {
      std::vector<const LinearConstraint*> lower, upper;
      for (const auto& c : sys) {
        if (c.coeffs[k] > 0) {
          lower.push_back(&c);
        } else if (c.coeffs[k] < 0) {
          upper.push_back(&c);
        } else {
          next.push_back(c);
        }
      }
      for (const auto* p : lower)
        for (const auto* q : upper) {
          const Rational a = p->coeffs[k];
          const Rational b = -q->coeffs[k];
          LinearConstraint d;
          d.coeffs.resize(dims);
          for (std::size_t i = 0; i < dims; ++i) d.coeffs[i] = b * p->coeffs[i] + a * q->coeffs[i];
          d.coeffs[k] = 0;
          d.bound = b * p->bound + a * q->bound;
          d.sense = (p->sense == Sense::Greater || q->sense == Sense::Greater) ? Sense::Greater
                                                                                : Sense::GreaterEqual;
          next.push_back(std::move(d));
        }
    }
    sys = std::move(next);
    if (!tidy(sys, out.contradiction)) return out;
  }
  out.rest = std::move(sys);
  return out;
}

Interval range_of(const std::vector<LinearConstraint>& sys, const std::vector<Rational>& x,
                  std::size_t k) {
  Interval iv;
  for (const auto& c : sys) {
    const Rational& a = c.coeffs[k];
    if (a == 0) continue;
    Rational rest = c.bound;
    for (std::size_t i = 0; i < k; ++i) rest -= c.coeffs[i] * x[i];
    const Rational v = rest / a;
    const bool strict = c.sense == Sense::Greater;
    if (c.sense == Sense::Equal || a > 0) {
      if (!iv.lo || v > *iv.lo || (v == *iv.lo && strict)) {
        iv.lo = v;
        iv.lo_strict = strict;
      }
    }
    if (c.sense == Sense::Equal || a < 0) {
      if (!iv.hi || v < *iv.hi || (v == *iv.hi && strict)) {
        iv.hi = v;
        iv.hi_strict = strict;
      }
    }
  }
  return iv;
}

Rational pick(const Interval& iv) {
  auto inside = [&](const Rational& v) {
    if (iv.lo && (v < *iv.lo || (v == *iv.lo && iv.lo_strict))) return false;
    if (iv.hi && (v > *iv.hi || (v == *iv.hi && iv.hi_strict))) return false;
    return true;
  };
  if (inside(Rational(0))) return Rational(0);
  if (iv.lo) {
    BigInt c = floor_q(*iv.lo);
    if (Rational(c) < *iv.lo || iv.lo_strict) c += 1;
    if (inside(Rational(c))) return Rational(c);
  }
  if (iv.hi) {
    BigInt c = floor_q(*iv.hi);
    if (Rational(c) == *iv.hi && iv.hi_strict) c -= 1;
    if (inside(Rational(c))) return Rational(c);
  }
  return (*iv.lo + *iv.hi) / 2;
}

}  // namespace

bool LinearConstraint::satisfied_by(const std::vector<Rational>& x) const {
  Rational lhs(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) lhs += coeffs[i] * x[i];
  switch (sense) {
    case Sense::GreaterEqual: return lhs >= bound;
    case Sense::Greater: return lhs > bound;
    case Sense::Equal: return lhs == bound;
  }
  return false;
}

std::string LinearConstraint::describe() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    os << (any ? " + " : "") << coeffs[i] << "*x" << i;
    any = true;
  }
  if (!any) os << "0";
  os << (sense == Sense::GreaterEqual ? " >= " : sense == Sense::Greater ? " > " : " = ") << bound;
  return os.str();
}

LinearConstraint ge(std::vector<Rational> coeffs, Rational bound) {
  return {std::move(coeffs), std::move(bound), Sense::GreaterEqual};
}
LinearConstraint gt(std::vector<Rational> coeffs, Rational bound) {
  return {std::move(coeffs), std::move(bound), Sense::Greater};
}
LinearConstraint eq(std::vector<Rational> coeffs, Rational bound) {
  return {std::move(coeffs), std::move(bound), Sense::Equal};
}

Feasibility linear_feasible(const std::vector<LinearConstraint>& system, std::size_t dims) {
  Elimination el = eliminate(system, dims, 0);
  if (el.contradiction) return {std::nullopt, el.contradiction};
  std::vector<Rational> x(dims, Rational(0));
  for (std::size_t k = 0; k < dims; ++k) {
    const Level& lv = el.levels[k];
    if (lv.definition) {
      Rational rest = lv.definition->bound;
      for (std::size_t i = 0; i < k; ++i) rest -= lv.definition->coeffs[i] * x[i];
      x[k] = rest / lv.definition->coeffs[k];
    } else {
      x[k] = pick(range_of(lv.system, x, k));
    }
  }
  return {x, std::nullopt};
}

Interval coordinate_range(const std::vector<LinearConstraint>& system, std::size_t dims,
                          std::size_t coordinate) {
  std::vector<LinearConstraint> permuted = system;
  for (auto& c : permuted) std::swap(c.coeffs[0], c.coeffs[coordinate]);
  Elimination el = eliminate(std::move(permuted), dims, 1);
  if (el.contradiction) {
    Interval iv;
    iv.empty = true;
    return iv;
  }
  Interval iv = range_of(el.rest, {}, 0);
  if (iv.lo && iv.hi && (*iv.lo > *iv.hi || (*iv.lo == *iv.hi && (iv.lo_strict || iv.hi_strict))))
    iv.empty = true;
  return iv;
}

}  // namespace nctoric
