#include "nctoric/matrix.hpp"

namespace nctoric {

std::string polynomial_to_string(const Polynomial<GaussRational>& p, const std::string& var) {
  std::string out;
  for (std::size_t k = p.size(); k-- > 0;) {
    const GaussRational& c = p[k];
    if (c.is_zero()) continue;
    std::string mono;
    if (k == 1) mono = var;
    if (k > 1) mono = var + "^" + std::to_string(k);
    std::string coeff = to_string(c);
    const bool compound = !c.is_real() && !c.real().is_zero();
    bool negative = false;
    if (!compound && coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    if (compound) coeff = "(" + coeff + ")";
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace nctoric
