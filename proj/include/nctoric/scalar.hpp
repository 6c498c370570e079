#pragma once

// Exact scalar types: arbitrary-precision integers and rationals (GMP through
// Boost.Multiprecision, expression templates off so Eigen sees plain values)
// and the Gaussian rationals Q(i).

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nctoric {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "p" or "p/q" (optional sign, decimal digits). Rejects q = 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Element re + im*i of Q(i). Both parts are canonical rationals, so equality
/// is structural.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(long long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(const BigInt& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2 as a rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  /// Throws Error(InvalidArgument) on zero.
  GaussRational inverse() const;

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Lexicographic on (re, im); only used for canonical ordering in containers.
  friend bool lex_less(const GaussRational& a, const GaussRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Formats as "3/2", "-i", "1/2+3i", "2-1/3i".
std::string to_string(const GaussRational& z);
/// Accepts the formats produced by to_string, plus parenthesised forms and
/// "i"-only literals such as "(3/2+1/2i)", "-2i", "i".
GaussRational parse_gauss(std::string_view text);
std::ostream& operator<<(std::ostream& os, const GaussRational& z);

inline bool is_zero(const BigInt& q) { return q == 0; }
inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }

}  // namespace nctoric

namespace Eigen {

template <>
struct NumTraits<nctoric::GaussRational> {
  using Real = nctoric::GaussRational;
  using NonInteger = nctoric::GaussRational;
  using Literal = nctoric::GaussRational;
  using Nested = nctoric::GaussRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline int digits10() { return 0; }
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
};

}  // namespace Eigen
