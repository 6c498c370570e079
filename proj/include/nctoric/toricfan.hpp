#pragma once

// Simplicial index-one fans, their dual monoids and face combinatorics.

#include "nctoric/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nctoric {

/// Sorted ray indices. The empty set is the zero cone.
using ConeId = std::vector<int>;

std::string to_string(const ConeId& c);
bool is_subface(const ConeId& tau, const ConeId& sigma);  // tau ⊆ sigma
ConeId intersect(const ConeId& a, const ConeId& b);

struct PairCertificate {
  std::size_t first;   // indices into max_cones, first < second
  std::size_t second;
  LatticeVector functional;
};

struct RawFan {
  int rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<ConeId> max_cones;
  std::vector<PairCertificate> certificates;
};

struct Fan {
  int rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<ConeId> max_cones;
  std::vector<ConeId> faces;  // by decreasing dimension, then lexicographic
  std::vector<PairCertificate> certificates;

  bool is_face(const ConeId& c) const;
  bool is_maximal(const ConeId& c) const;
  std::optional<std::size_t> max_index(const ConeId& c) const;
  /// Maximal cones containing tau, in file order.
  std::vector<std::size_t> covering(const ConeId& tau) const;
  /// Pairs (tau, sigma) with tau a proper face of sigma.
  std::vector<std::pair<ConeId, ConeId>> incidences() const;

  friend bool operator==(const Fan& a, const Fan& b);
};

Fan validate_fan(const RawFan& raw);
RawFan to_raw(const Fan& fan);

/// Rows are the ray vectors of the cone.
IntMatrix ray_matrix(const Fan& fan, const ConeId& cone);

std::vector<LatticeVector> dual_generators(const Fan& fan, const ConeId& sigma);

struct ConeGenerators {
  std::vector<LatticeVector> gens;
  std::vector<bool> perp;
};
ConeGenerators cone_monoid_generators(const Fan& fan, const ConeId& tau);

std::vector<LatticeVector> perp_lattice_basis(const Fan& fan, const ConeId& tau);

bool in_dual_cone(const Fan& fan, const ConeId& tau, const LatticeVector& m);
bool in_perp(const Fan& fan, const ConeId& tau, const LatticeVector& m);

/// Nonnegative integer c with sum c_i gens_i = target, or nullopt. A
/// positivity functional may be supplied; otherwise one is derived.
std::optional<std::vector<long long>> comm_monoid_member(
    const std::vector<LatticeVector>& gens, const LatticeVector& target,
    const std::optional<LatticeVector>& positivity = std::nullopt);

/// Standard test fans.
RawFan fan_affine_plane(int rank);  // one cone on e_1..e_n
RawFan fan_p1();
RawFan fan_p2();
RawFan fan_p1xp1();
RawFan fan_hirzebruch(int a);

}  // namespace nctoric
