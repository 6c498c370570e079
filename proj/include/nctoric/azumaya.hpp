#pragma once

// Morphisms from an Azumaya point M_r(C) into a soft noncommutative toric
// scheme: quasi-homomorphic chart maps, their gluing, idempotent systems,
// surrogates, kernels, A^1 probes and a seeded matrix-model sampler.

#include "nctoric/deltasystem.hpp"
#include "nctoric/matrix.hpp"
#include "nctoric/ncalgebra.hpp"
#include "nctoric/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nctoric {

/// e1 ≼ e2: e1 e2 = e2 e1 = e1.
bool subordinate(const QIMatrix& e1, const QIMatrix& e2);
bool is_idempotent(const QIMatrix& e);

/// Inverse of y inside the corner algebra e M e, if y is invertible there.
std::optional<QIMatrix> corner_inverse(const QIMatrix& y, const QIMatrix& e);

struct IdemSystem {
  Fan fan;
  std::map<ConeId, QIMatrix> e;
  bool weak = false;
  bool strong = false;
  std::map<ConeId, QIMatrix> reduced;  // filled when strong
  bool complete = false;
  Report findings{"idempotent system"};
};

/// Throws NotIdempotent if some e_sigma is missing, misshapen or not idempotent.
IdemSystem idem_classify(const Fan& fan, const std::map<ConeId, QIMatrix>& e);

struct QuasiHomChart {
  ConeId cone;
  std::map<ReducedWord, QIMatrix> images;  // chart generator -> image
  QIMatrix identity_image;
  std::map<ReducedWord, QIMatrix> inverse_witnesses;

  bool is_zero() const;
};

/// One factor of a factorization: a chart generator, or the corner inverse of one.
struct Factor {
  ReducedWord generator;
  bool inverted = false;
};

/// Throws BadFactorization if the factors do not multiply to w or name an
/// unknown generator / missing inverse.
QIMatrix eval_word(const QuasiHomChart& chart, const ReducedWord& w, const std::vector<Factor>& factorization);

/// Factorizes w over the chart's generators (BFS up to max_factors) and
/// evaluates. Throws NoFactorization.
QIMatrix eval_in_chart(const QuasiHomChart& chart, const SubmonoidFG& sub, const ReducedWord& w,
                       std::size_t max_factors = 8);

QIMatrix eval_elem(const QuasiHomChart& chart, const SubmonoidFG& sub, const AlgElem& a,
                   std::size_t max_factors = 8);

Report check_quasi_hom(const QuasiHomChart& chart);

constexpr std::size_t kRelationBound = 4;

/// Conditions (a)-(c) of gluing for tau < sigma.
Report check_gluing_pair(const AdmissibleSystem& sys, const QuasiHomChart& upper, const QuasiHomChart& lower);

/// Compares images of all generator products up to relation_bound factors
/// that reduce to the same word. A clean run is only bound-relative, except
/// for zero charts and charts on independent generators (free monoids).
Report check_relations(const QuasiHomChart& chart, const SubmonoidFG& sub, std::size_t relation_bound = kRelationBound);

struct MorphismData {
  int r = 0;
  AdmissibleSystem system;
  std::map<ConeId, QuasiHomChart> charts;
};

std::map<ConeId, QIMatrix> identity_images(const MorphismData& m);

Report verify_morphism(const MorphismData& m);

/// Basis of the unital subalgebra generated by all chart images. Throws
/// MorphismInvalid when verify_morphism fails.
std::vector<QIMatrix> surrogate_basis(const MorphismData& m);

/// Kernel of evaluation on generator products of length <= bound.
BoundedIdeal image_kernel_bounded(const MorphismData& m, const ConeId& cone, std::size_t bound);

struct A1Root {
  GaussRational value;
  int multiplicity = 0;  // in the minimal polynomial
  long long fiber_dimension = 0;
};

struct A1Probe {
  Polynomial<GaussRational> minpoly;
  std::vector<A1Root> roots;
  /// Monic factor left after removing all Q(i) roots; empty when it splits.
  Polynomial<GaussRational> unsplit;
};

A1Probe a1_probe(const QIMatrix& a);

/// pattern: idempotent per cone; nullopt selects identity on the first
/// maximal cone and 0 elsewhere. Throws PatternIncomplete unless the pattern
/// is strong and complete.
MorphismData sample_matrix_model(const AdmissibleSystem& sys, int r,
                                 const std::optional<std::map<ConeId, QIMatrix>>& pattern, std::uint64_t seed);

std::string to_string(const QIMatrix& m);

}  // namespace nctoric
