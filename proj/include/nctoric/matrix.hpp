#pragma once

// Dense exact matrices and field-generic elimination. Every routine here is a
// template over an exact field scalar (Rational or GaussRational); nothing
// rounds.

#include "nctoric/scalar.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace nctoric {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<BigInt>;
using RatMatrix = MatrixX<Rational>;
using QIMatrix = MatrixX<GaussRational>;
using QIVector = VectorX<GaussRational>;

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class DerivedA, class DerivedB>
bool exactly_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class Scalar>
MatrixX<Scalar> identity(Eigen::Index r) {
  return MatrixX<Scalar>::Identity(r, r);
}

template <class Scalar>
MatrixX<Scalar> zeros(Eigen::Index rows, Eigen::Index cols) {
  return MatrixX<Scalar>::Zero(rows, cols);
}

/// Reduced row echelon form with the pivot column of each nonzero row.
template <class Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;
  std::vector<Eigen::Index> pivots;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <class Scalar>
Echelon<Scalar> row_reduce(MatrixX<Scalar> m) {
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  return row_reduce(m).rank();
}

/// Columns form a basis of {x : m x = 0}.
template <class Scalar>
MatrixX<Scalar> nullspace(const MatrixX<Scalar>& m) {
  const Echelon<Scalar> e = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  MatrixX<Scalar> basis = zeros<Scalar>(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto f = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(f, kk) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], kk) = -e.reduced(static_cast<Eigen::Index>(r), f);
  }
  return basis;
}

/// Some x with a x = b, or nullopt when inconsistent.
template <class Scalar>
std::optional<VectorX<Scalar>> solve(const MatrixX<Scalar>& a, const VectorX<Scalar>& b) {
  MatrixX<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const Echelon<Scalar> e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

template <class Scalar>
std::optional<MatrixX<Scalar>> inverse(const MatrixX<Scalar>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) return std::nullopt;
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity<Scalar>(n);
  const Echelon<Scalar> e = row_reduce(aug);
  if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  return MatrixX<Scalar>(e.reduced.rightCols(n));
}

template <class Scalar>
Scalar determinant(MatrixX<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && is_zero(m(pivot, col))) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const Scalar f = m(i, col) * inv;
      for (Eigen::Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Coefficients c_0..c_d (low degree first) of a polynomial over Scalar.
template <class Scalar>
using Polynomial = std::vector<Scalar>;

template <class Scalar>
MatrixX<Scalar> evaluate(const Polynomial<Scalar>& p, const MatrixX<Scalar>& a) {
  MatrixX<Scalar> acc = zeros<Scalar>(a.rows(), a.cols());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = (acc * a).eval();
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

/// Monic polynomial of least degree annihilating a, from the first linear
/// dependency among I, a, a^2, ...
template <class Scalar>
Polynomial<Scalar> minimal_polynomial(const MatrixX<Scalar>& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index len = r * r;
  std::vector<MatrixX<Scalar>> powers{identity<Scalar>(r)};
  auto vec = [&](const MatrixX<Scalar>& m) {
    VectorX<Scalar> v(len);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) v(i * r + j) = m(i, j);
    return v;
  };
  for (Eigen::Index k = 1; k <= len; ++k) {
    powers.push_back((powers.back() * a).eval());
    MatrixX<Scalar> basis(len, k);
    for (Eigen::Index j = 0; j < k; ++j) basis.col(j) = vec(powers[static_cast<std::size_t>(j)]);
    if (auto x = solve<Scalar>(basis, vec(powers.back()))) {
      Polynomial<Scalar> p;
      for (Eigen::Index j = 0; j < k; ++j) p.push_back(-(*x)(j));
      p.push_back(Scalar(1));
      return p;
    }
  }
  return {Scalar(1)};  // r == 0
}

std::string polynomial_to_string(const Polynomial<GaussRational>& p, const std::string& var = "t");

}  // namespace nctoric
