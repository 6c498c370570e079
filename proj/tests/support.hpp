#pragma once

// Shared fixtures for the test binaries: seeded generators for words,
// Gaussian rationals and matrices, and small matrix builders.

#include "nctoric/freeword.hpp"
#include "nctoric/matrix.hpp"
#include "nctoric/ncalgebra.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testing {

using namespace nctoric;

inline ReducedWord random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, rank);
  std::bernoulli_distribution neg(0.5);
  std::vector<int> ls;
  for (int k = len(rng); k > 0; --k) ls.push_back(neg(rng) ? -letter(rng) : letter(rng));
  return ReducedWord(rank, ls);
}

inline GaussRational random_gauss(std::mt19937_64& rng, int span = 4) {
  std::uniform_int_distribution<int> d(-span, span);
  std::uniform_int_distribution<int> den(1, 3);
  return {Rational(d(rng), den(rng)), Rational(d(rng), den(rng))};
}

inline AlgElem random_elem(std::mt19937_64& rng, int rank, int terms, int max_len) {
  AlgElem a(rank);
  for (int k = 0; k < terms; ++k) a.add_term(random_word(rng, rank, max_len), random_gauss(rng));
  return a;
}

inline QIMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r) {
  QIMatrix m(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) m(i, j) = random_gauss(rng);
  return m;
}

inline QIMatrix qi(std::initializer_list<std::initializer_list<long long>> rows) {
  QIMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) m(i, j++) = GaussRational(v);
    ++i;
  }
  return m;
}

inline IntMatrix im(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) m(i, j++) = BigInt(v);
    ++i;
  }
  return m;
}

inline QIMatrix diag(std::initializer_list<long long> d) {
  const auto r = static_cast<Eigen::Index>(d.size());
  QIMatrix m = zeros<GaussRational>(r, r);
  Eigen::Index i = 0;
  for (long long v : d) {
    m(i, i) = GaussRational(v);
    ++i;
  }
  return m;
}

/// Matrix unit e_ij in M_r.
inline QIMatrix unit(Eigen::Index r, Eigen::Index i, Eigen::Index j) {
  QIMatrix m = zeros<GaussRational>(r, r);
  m(i, j) = GaussRational(1);
  return m;
}

inline ReducedWord w(const char* text, int rank) { return parse_word(text, rank); }

}  // namespace testing
