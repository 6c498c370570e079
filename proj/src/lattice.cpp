#include "nctoric/lattice.hpp"

#include <numeric>
#include <sstream>

namespace nctoric {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void row_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, const BigInt& factor) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(dst, j) -= factor * m(src, j);
}

void negate_row(IntMatrix& m, Eigen::Index r) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

LatticeVector make_vector(std::initializer_list<long long> entries) {
  LatticeVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long long e : entries) v(i++) = e;
  return v;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ')';
  return os.str();
}

long long content(const LatticeVector& v) {
  long long g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = std::gcd(g, v(i) < 0 ? -v(i) : v(i));
  return g;
}

IntMatrix to_int_matrix(const std::vector<LatticeVector>& rows, Eigen::Index cols) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = BigInt(rows[i](j));
  return m;
}

LatticeVector to_lattice_vector(const Eigen::Ref<const IntMatrix>& row_or_col) {
  LatticeVector v(row_or_col.size());
  for (Eigen::Index i = 0; i < row_or_col.size(); ++i)
    v(i) = row_or_col.reshaped()(i).convert_to<long long>();
  return v;
}

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, identity<BigInt>(m.rows()), {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < h.cols() && row < h.rows(); ++col) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = row; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (best < 0 || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best < 0) break;
      if (best != row) {
        h.row(best).swap(h.row(row));
        u.row(best).swap(u.row(row));
      }
      bool clean = true;
      for (Eigen::Index i = row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        const BigInt q = h(i, col) / h(row, col);
        row_axpy(h, i, row, q);
        row_axpy(u, i, row, q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (Eigen::Index i = 0; i < row; ++i) {
      const BigInt q = floor_div(h(i, col), h(row, col));
      if (q == 0) continue;
      row_axpy(h, i, row, q);
      row_axpy(u, i, row, q);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const HermiteForm f = hnf(m.transpose());
  const auto r = static_cast<Eigen::Index>(f.pivot_cols.size());
  return f.u.bottomRows(f.u.rows() - r);
}

BigInt integer_determinant(const IntMatrix& m) {
  const Rational d = determinant<Rational>(m.cast<Rational>());
  return numerator(d);
}

std::optional<IntMatrix> solve_in_row_lattice(const IntMatrix& basis, const IntMatrix& target_row) {
  const HermiteForm f = hnf(basis);
  IntMatrix residual = target_row;
  IntMatrix y = IntMatrix::Zero(1, basis.rows());
  for (std::size_t i = 0; i < f.pivot_cols.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = f.pivot_cols[i];
    if (residual(0, c) == 0) continue;
    const BigInt& p = f.h(r, c);
    if (residual(0, c) % p != 0) return std::nullopt;
    const BigInt q = residual(0, c) / p;
    y(0, r) = q;
    for (Eigen::Index j = 0; j < residual.cols(); ++j) residual(0, j) -= q * f.h(r, j);
  }
  if (!is_zero_matrix(residual)) return std::nullopt;
  return IntMatrix(y * f.u);
}

}  // namespace nctoric
