#pragma once

// The group algebra Q(i)<M̆> on reduced words, and bounded two-sided ideal
// membership by linear algebra on the word basis.

#include "nctoric/freeword.hpp"
#include "nctoric/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nctoric {

class AlgElem {
 public:
  using Terms = std::map<ReducedWord, GaussRational>;

  AlgElem() = default;
  explicit AlgElem(int rank) : rank_(rank) {}
  AlgElem(const ReducedWord& w, GaussRational c = 1);

  static AlgElem constant(int rank, GaussRational c);

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t max_length() const;
  GaussRational coefficient(const ReducedWord& w) const;

  /// Adds c*w, dropping the term if it cancels.
  void add_term(const ReducedWord& w, const GaussRational& c);

  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const AlgElem& a, const AlgElem& b) { return !(a == b); }

 private:
  int rank_ = 0;
  Terms terms_;
};

AlgElem alg_add(const AlgElem& a, const AlgElem& b);
AlgElem alg_sub(const AlgElem& a, const AlgElem& b);
AlgElem alg_scale(const AlgElem& a, const GaussRational& c);
AlgElem alg_mul(const AlgElem& a, const AlgElem& b);
AlgElem commutator(const AlgElem& a, const AlgElem& b);

inline AlgElem operator+(const AlgElem& a, const AlgElem& b) { return alg_add(a, b); }
inline AlgElem operator-(const AlgElem& a, const AlgElem& b) { return alg_sub(a, b); }
inline AlgElem operator*(const AlgElem& a, const AlgElem& b) { return alg_mul(a, b); }
inline AlgElem operator*(const GaussRational& c, const AlgElem& a) { return alg_scale(a, c); }

/// Laurent polynomial: exponent vector -> coefficient, zeros dropped.
using LaurentPoly = std::map<LatticeVector, GaussRational, LexLess>;

LaurentPoly abelianize_elem(const AlgElem& a);
LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);
std::string to_string(const LaurentPoly& p);

/// "(3/2+1/2i)*z1 z2^-1 + 1"
AlgElem parse_alg(std::string_view text, int rank);
std::string to_string(const AlgElem& a);

/// All reduced words of length <= len, shortlex order.
std::vector<ReducedWord> words_up_to(int rank, std::size_t len);

struct BoundedIdeal {
  int rank = 0;
  std::vector<AlgElem> generators;
  std::size_t degree_bound = 0;
  /// When set, the multipliers x, y in x*g*y range over this monoid only
  /// (a chart algebra) instead of all of M̆.
  std::optional<SubmonoidFG> ambient;
};

struct IdealTerm {
  GaussRational coeff;
  ReducedWord left;
  std::size_t generator;
  ReducedWord right;
};

struct IdealCertificate {
  std::vector<IdealTerm> terms;

  AlgElem reconstruct(const BoundedIdeal& ideal) const;
  std::string describe(const BoundedIdeal& ideal) const;
};

struct MembershipResult {
  std::optional<IdealCertificate> certificate;  // nullopt: not found at this bound
  std::size_t columns = 0;
  std::size_t rows = 0;

  bool found() const { return certificate.has_value(); }
};

MembershipResult bounded_ideal_member(const BoundedIdeal& ideal, const AlgElem& target);

/// Generators [f, g] with f a letter and g a positive word of length l.
BoundedIdeal l_commutative_gens(int rank, std::size_t l, std::size_t degree_bound);

}  // namespace nctoric
