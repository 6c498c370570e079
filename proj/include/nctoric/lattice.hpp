#pragma once

// Integer lattice machinery: row Hermite normal form with unimodular
// transform, saturated kernel bases, and small helpers for vectors in N and M.

#include "nctoric/matrix.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace nctoric {

/// Element of N or M. Desk-scale coordinates fit in 64 bits; anything that can
/// grow (HNF, determinants) is done in BigInt.
using LatticeVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

struct LexLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) != b(i)) return a(i) < b(i);
    return false;
  }
};

inline bool same_vector(const LatticeVector& a, const LatticeVector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

inline long long pairing(const LatticeVector& m, const LatticeVector& v) { return m.dot(v); }

LatticeVector make_vector(std::initializer_list<long long> entries);
std::string to_string(const LatticeVector& v);

/// gcd of the absolute values of the entries (0 for the zero vector).
long long content(const LatticeVector& v);

IntMatrix to_int_matrix(const std::vector<LatticeVector>& rows, Eigen::Index cols);
LatticeVector to_lattice_vector(const Eigen::Ref<const IntMatrix>& row_or_col);

/// Row-style Hermite normal form: h = u * m with u unimodular; pivots
/// positive, entries above a pivot reduced into [0, pivot), zero rows last.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<Eigen::Index> pivot_cols;
};

HermiteForm hnf(const IntMatrix& m);

/// Rows form a Z-basis of the saturated lattice {x : x * m^T = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

BigInt integer_determinant(const IntMatrix& m);

/// x with x * basis = target (basis rows), or nullopt when target is outside
/// the row lattice.
std::optional<IntMatrix> solve_in_row_lattice(const IntMatrix& basis, const IntMatrix& target_row);

}  // namespace nctoric
