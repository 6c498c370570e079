#include "nctoric/scalar.hpp"

#include "nctoric/error.hpp"

#include <cctype>
#include <ostream>

namespace nctoric {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw Error(ErrorKind::ParseError, "malformed number '" + std::string(whole) + "'");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s, text));
  BigInt num = parse_integer(std::string_view(s).substr(0, slash), text);
  std::string_view den_text = std::string_view(s).substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw Error(ErrorKind::ParseError, "signed denominator in '" + std::string(text) + "'");
  BigInt den = parse_integer(den_text, text);
  if (den == 0)
    throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  const Rational n = norm();
  return {re_ / n, -im_ / n};
}

std::string to_string(const GaussRational& z) {
  const Rational& re = z.real();
  const Rational& im = z.imag();
  if (im == 0) return re.str();
  std::string imag_part;
  if (im == 1) {
    imag_part = "i";
  } else if (im == -1) {
    imag_part = "-i";
  } else {
    imag_part = im.str() + "i";
  }
  if (re == 0) return imag_part;
  if (imag_part.front() == '-') return re.str() + imag_part;
  return re.str() + "+" + imag_part;
}

GaussRational parse_gauss(std::string_view text) {
  std::string s = strip(text);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty scalar literal");

  Rational re(0), im(0);
  std::size_t pos = 0;
  bool seen_re = false, seen_im = false;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (!term.empty() && term.back() == 'i') {
      if (seen_im) throw Error(ErrorKind::ParseError, "two imaginary parts in '" + std::string(text) + "'");
      seen_im = true;
      std::string coeff = term.substr(0, term.size() - 1);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      if (coeff.empty() || coeff == "+") {
        im = 1;
      } else if (coeff == "-") {
        im = -1;
      } else {
        im = parse_rational(coeff);
      }
    } else {
      if (seen_re) throw Error(ErrorKind::ParseError, "two real parts in '" + std::string(text) + "'");
      seen_re = true;
      re = parse_rational(term);
    }
  }
  return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << to_string(z); }

}  // namespace nctoric
