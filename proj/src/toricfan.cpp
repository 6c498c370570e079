#include "nctoric/toricfan.hpp"

#include "nctoric/error.hpp"
#include "nctoric/feasibility.hpp"
#include "nctoric/parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace nctoric {

namespace {

std::vector<Rational> as_rational(const LatticeVector& v) {
  std::vector<Rational> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.emplace_back(v(i));
  return out;
}

/// Scales a rational vector by the lcm of its denominators, then divides out
/// the content.
LatticeVector primitive_integral(const std::vector<Rational>& x) {
  BigInt l(1);
  for (const auto& q : x) l = boost::multiprecision::lcm(l, BigInt(denominator(q)));
  LatticeVector v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = numerator(Rational(x[i] * l)).convert_to<long long>();
  const long long g = content(v);
  if (g > 1) v /= g;
  return v;
}

bool certificate_holds(const Fan& fan, const ConeId& a, const ConeId& b, const LatticeVector& m) {
  if (m.size() != fan.rank) return false;
  for (int r : a) {
    const long long p = pairing(m, fan.rays[static_cast<std::size_t>(r)]);
    const bool shared = std::binary_search(b.begin(), b.end(), r);
    if (shared ? p != 0 : p <= 0) return false;
  }
  for (int r : b) {
    const long long p = pairing(m, fan.rays[static_cast<std::size_t>(r)]);
    const bool shared = std::binary_search(a.begin(), a.end(), r);
    if (shared ? p != 0 : p >= 0) return false;
  }
  return true;
}

std::optional<LatticeVector> find_certificate(const Fan& fan, const ConeId& a, const ConeId& b) {
  std::vector<LinearConstraint> sys;
  for (int r : a) {
    auto v = as_rational(fan.rays[static_cast<std::size_t>(r)]);
    if (std::binary_search(b.begin(), b.end(), r)) {
      sys.push_back(eq(v, 0));
    } else {
      sys.push_back(gt(v, 0));
    }
  }
  for (int r : b) {
    if (std::binary_search(a.begin(), a.end(), r)) continue;
    auto v = as_rational(fan.rays[static_cast<std::size_t>(r)]);
    for (auto& x : v) x = -x;
    sys.push_back(gt(v, 0));
  }
  const Feasibility f = linear_feasible(sys, static_cast<std::size_t>(fan.rank));
  if (!f.feasible()) return std::nullopt;
  return primitive_integral(*f.witness);
}

std::string vec_list(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
  return s;
}

}  // namespace

std::string to_string(const ConeId& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "}";
}

bool is_subface(const ConeId& tau, const ConeId& sigma) {
  return std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end());
}

ConeId intersect(const ConeId& a, const ConeId& b) {
  ConeId out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool Fan::is_face(const ConeId& c) const { return std::binary_search(faces.begin(), faces.end(), c, [](const ConeId& x, const ConeId& y) {
  if (x.size() != y.size()) return x.size() > y.size();
  return x < y;
}); }

bool Fan::is_maximal(const ConeId& c) const { return max_index(c).has_value(); }

std::optional<std::size_t> Fan::max_index(const ConeId& c) const {
  for (std::size_t i = 0; i < max_cones.size(); ++i)
    if (max_cones[i] == c) return i;
  return std::nullopt;
}

std::vector<std::size_t> Fan::covering(const ConeId& tau) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < max_cones.size(); ++i)
    if (is_subface(tau, max_cones[i])) out.push_back(i);
  return out;
}

std::vector<std::pair<ConeId, ConeId>> Fan::incidences() const {
  std::vector<std::pair<ConeId, ConeId>> out;
  for (const auto& sigma : faces)
    for (const auto& tau : faces)
      if (tau.size() < sigma.size() && is_subface(tau, sigma)) out.emplace_back(tau, sigma);
  return out;
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.rank != b.rank || a.rays.size() != b.rays.size() || a.max_cones != b.max_cones ||
      a.faces != b.faces || a.certificates.size() != b.certificates.size())
    return false;
  for (std::size_t i = 0; i < a.rays.size(); ++i)
    if (!same_vector(a.rays[i], b.rays[i])) return false;
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    const auto& x = a.certificates[i];
    const auto& y = b.certificates[i];
    if (x.first != y.first || x.second != y.second || !same_vector(x.functional, y.functional)) return false;
  }
  return true;
}

Fan validate_fan(const RawFan& raw) {
  if (raw.rank < 1) throw Error(ErrorKind::InvalidArgument, "fan rank must be positive");
  Fan fan;
  fan.rank = raw.rank;
  fan.rays = raw.rays;
  const auto n = static_cast<std::size_t>(raw.rank);
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    if (static_cast<std::size_t>(fan.rays[i].size()) != n)
      throw Error(ErrorKind::RankMismatch, "ray " + std::to_string(i) + " has wrong length");
    if (content(fan.rays[i]) != 1)
      throw Error(ErrorKind::NonPrimitiveRay, "ray " + std::to_string(i) + " = " + to_string(fan.rays[i]) +
                                                  " is not primitive");
  }
  if (raw.max_cones.empty()) throw Error(ErrorKind::NotAFan, "fan has no maximal cones");
  for (ConeId c : raw.max_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end() || c.size() != n)
      throw Error(ErrorKind::NotAFan, "cone " + to_string(c) + " must list " + std::to_string(n) + " distinct rays");
    for (int r : c)
      if (r < 0 || static_cast<std::size_t>(r) >= fan.rays.size())
        throw Error(ErrorKind::NotAFan, "cone " + to_string(c) + " uses unknown ray " + std::to_string(r));
    if (std::find(fan.max_cones.begin(), fan.max_cones.end(), c) != fan.max_cones.end())
      throw Error(ErrorKind::NotAFan, "cone " + to_string(c) + " listed twice");
    fan.max_cones.push_back(c);
  }
  for (const auto& c : fan.max_cones) {
    const BigInt d = integer_determinant(ray_matrix(fan, c));
    if (d != 1 && d != -1)
      throw Error(ErrorKind::NotIndexOne, "cone " + to_string(c) + " has |det| = " + BigInt(abs(d)).str());
  }
  bool reference = false;
  for (const auto& c : fan.max_cones) {
    std::vector<bool> hit(n, false);
    for (int r : c) {
      const auto& v = fan.rays[static_cast<std::size_t>(r)];
      for (std::size_t i = 0; i < n; ++i)
        if (same_vector(v, LatticeVector::Unit(raw.rank, static_cast<Eigen::Index>(i)))) hit[i] = true;
    }
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) reference = true;
  }
  if (!reference) throw Error(ErrorKind::MissingReferenceCone, "no maximal cone on e_1..e_n");

  std::set<ConeId> faces;
  for (const auto& c : fan.max_cones)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      ConeId f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(c[i]);
      faces.insert(f);
    }
  fan.faces.assign(faces.begin(), faces.end());
  std::sort(fan.faces.begin(), fan.faces.end(), [](const ConeId& x, const ConeId& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x < y;
  });

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < fan.max_cones.size(); ++j) pairs.emplace_back(i, j);
  fan.certificates.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const ConeId& a = fan.max_cones[i];
    const ConeId& b = fan.max_cones[j];
    const PairCertificate* supplied = nullptr;
    for (const auto& c : raw.certificates)
      if ((c.first == i && c.second == j) || (c.first == j && c.second == i)) supplied = &c;
    if (supplied) {
      LatticeVector m = supplied->functional;
      if (supplied->first == j) m = -m;
      if (!certificate_holds(fan, a, b, m))
        throw Error(ErrorKind::NotAFan, "supplied certificate " + to_string(supplied->functional) +
                                            " does not separate " + to_string(a) + " and " + to_string(b));
      fan.certificates[k] = {i, j, m};
      return;
    }
    auto m = find_certificate(fan, a, b);
    if (!m)
      throw Error(ErrorKind::NotAFan, "cones " + to_string(a) + " and " + to_string(b) +
                                          " do not meet in a common face");
    fan.certificates[k] = {i, j, *m};
  });
  return fan;
}

RawFan to_raw(const Fan& fan) { return {fan.rank, fan.rays, fan.max_cones, fan.certificates}; }

IntMatrix ray_matrix(const Fan& fan, const ConeId& cone) {
  std::vector<LatticeVector> rows;
  for (int r : cone) rows.push_back(fan.rays[static_cast<std::size_t>(r)]);
  return to_int_matrix(rows, fan.rank);
}

std::vector<LatticeVector> dual_generators(const Fan& fan, const ConeId& sigma) {
  if (!fan.is_maximal(sigma)) throw Error(ErrorKind::NotMaximal, "cone " + to_string(sigma) + " is not maximal");
  const RatMatrix r = ray_matrix(fan, sigma).cast<Rational>();
  const auto inv = inverse<Rational>(r);
  if (!inv) throw Error(ErrorKind::NotIndexOne, "cone " + to_string(sigma) + " is singular");
  const RatMatrix u = inv->transpose();
  std::vector<LatticeVector> out;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    LatticeVector v(u.cols());
    for (Eigen::Index j = 0; j < u.cols(); ++j) v(j) = numerator(u(i, j)).convert_to<long long>();
    out.push_back(v);
  }
  return out;
}

ConeGenerators cone_monoid_generators(const Fan& fan, const ConeId& tau) {
  ConeGenerators out;
  auto add = [&](const LatticeVector& v) {
    for (const auto& g : out.gens)
      if (same_vector(g, v)) return;
    out.gens.push_back(v);
    out.perp.push_back(in_perp(fan, tau, v));
  };
  for (std::size_t i : fan.covering(tau))
    for (const auto& u : dual_generators(fan, fan.max_cones[i])) add(u);
  if (tau.empty())
    for (int i = 0; i < fan.rank; ++i) add(-LatticeVector::Unit(fan.rank, i));
  return out;
}

std::vector<LatticeVector> perp_lattice_basis(const Fan& fan, const ConeId& tau) {
  const IntMatrix k = kernel_basis(ray_matrix(fan, tau));
  std::vector<LatticeVector> out;
  for (Eigen::Index i = 0; i < k.rows(); ++i) out.push_back(to_lattice_vector(k.row(i)));
  return out;
}

bool in_dual_cone(const Fan& fan, const ConeId& tau, const LatticeVector& m) {
  return std::all_of(tau.begin(), tau.end(),
                     [&](int r) { return pairing(m, fan.rays[static_cast<std::size_t>(r)]) >= 0; });
}

bool in_perp(const Fan& fan, const ConeId& tau, const LatticeVector& m) {
  return std::all_of(tau.begin(), tau.end(),
                     [&](int r) { return pairing(m, fan.rays[static_cast<std::size_t>(r)]) == 0; });
}

namespace {

/// Functional >= 0 on every generator and > 0 on as many as possible: the
/// zero set is then exactly the generators whose negatives lie in the cone.
LatticeVector relative_interior_functional(const std::vector<LatticeVector>& gens, int n) {
  LatticeVector phi = LatticeVector::Zero(n);
  std::vector<LinearConstraint> base;
  for (const auto& g : gens) base.push_back(ge(as_rational(g), 0));
  std::vector<bool> done(gens.size(), false);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (done[k] || gens[k].isZero()) continue;
    auto sys = base;
    sys.push_back(gt(as_rational(gens[k]), 0));
    const Feasibility f = linear_feasible(sys, static_cast<std::size_t>(n));
    if (!f.feasible()) continue;
    const LatticeVector w = primitive_integral(*f.witness);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (pairing(w, gens[j]) > 0) done[j] = true;
    phi += w;
  }
  return phi;
}

/// Strictly positive integer relation sum mu_i l_i = 0, when one exists.
std::optional<std::vector<long long>> positive_relation(const std::vector<LatticeVector>& lin, int n) {
  std::vector<long long> mu(lin.size(), 0);
  bool paired = true;
  for (std::size_t i = 0; i < lin.size() && paired; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (same_vector(lin[i], -lin[j])) {
        mu[i] += 1;
        mu[j] += 1;
        found = true;
        break;
      }
    paired = found;
  }
  if (paired) return mu;
  const std::size_t k = lin.size();
  std::vector<LinearConstraint> sys;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> c(k, Rational(0));
    c[i] = 1;
    sys.push_back(ge(c, 1));
  }
  for (int d = 0; d < n; ++d) {
    std::vector<Rational> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = lin[i](d);
    sys.push_back(eq(c, 0));
  }
  const Feasibility f = linear_feasible(sys, k);
  if (!f.feasible()) return std::nullopt;
  const LatticeVector v = primitive_integral(*f.witness);
  return std::vector<long long>(v.data(), v.data() + v.size());
}

}  // namespace

std::optional<std::vector<long long>> comm_monoid_member(const std::vector<LatticeVector>& gens,
                                                         const LatticeVector& target,
                                                         const std::optional<LatticeVector>& positivity) {
  const int n = static_cast<int>(target.size());
  for (const auto& g : gens)
    if (g.size() != n) throw Error(ErrorKind::RankMismatch, "generator length differs from target");

  LatticeVector phi;
  std::vector<std::size_t> pos, lin;
  std::optional<std::vector<long long>> mu;
  auto split = [&](const LatticeVector& f) {
    pos.clear();
    lin.clear();
    for (std::size_t i = 0; i < gens.size(); ++i) (pairing(f, gens[i]) > 0 ? pos : lin).push_back(i);
    std::vector<LatticeVector> l;
    for (auto i : lin) l.push_back(gens[i]);
    mu = positive_relation(l, n);
  };
  if (positivity) {
    if (positivity->size() != n) throw Error(ErrorKind::RankMismatch, "positivity functional length");
    for (const auto& g : gens)
      if (pairing(*positivity, g) < 0)
        throw Error(ErrorKind::NoPositivityFunctional,
                    "supplied functional " + to_string(*positivity) + " is negative on " + to_string(g));
    phi = *positivity;
    split(phi);
  }
  if (!positivity || !mu) {
    phi = relative_interior_functional(gens, n);
    split(phi);
    if (!mu) throw Error(ErrorKind::NoPositivityFunctional, "generators " + vec_list(gens) + " admit no bounded search");
  }

  const long long budget = pairing(phi, target);
  if (budget < 0) return std::nullopt;
  IntMatrix lin_basis(static_cast<Eigen::Index>(lin.size()), n);
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (int d = 0; d < n; ++d) lin_basis(static_cast<Eigen::Index>(i), d) = gens[lin[i]](d);

  std::vector<long long> coeffs(gens.size(), 0);
  LatticeVector rest = target;
  std::function<bool(std::size_t, long long)> search = [&](std::size_t idx, long long left) -> bool {
    if (idx == pos.size()) {
      if (left != 0) return false;
      if (lin.empty()) return rest.isZero();
      IntMatrix t(1, n);
      for (int d = 0; d < n; ++d) t(0, d) = rest(d);
      const auto a = solve_in_row_lattice(lin_basis, t);
      if (!a) return false;
      BigInt shift(0);
      for (std::size_t i = 0; i < lin.size(); ++i) {
        const BigInt ai = (*a)(0, static_cast<Eigen::Index>(i));
        if (ai < 0) {
          const BigInt need = (-ai + (*mu)[i] - 1) / (*mu)[i];
          if (need > shift) shift = need;
        }
      }
      for (std::size_t i = 0; i < lin.size(); ++i)
        coeffs[lin[i]] = (BigInt((*a)(0, static_cast<Eigen::Index>(i))) + shift * (*mu)[i]).convert_to<long long>();
      return true;
    }
    const std::size_t g = pos[idx];
    const long long w = pairing(phi, gens[g]);
    for (long long c = left / w; c >= 0; --c) {
      coeffs[g] = c;
      rest -= c * gens[g];
      const bool ok = search(idx + 1, left - c * w);
      rest += c * gens[g];
      if (ok) return true;
    }
    coeffs[g] = 0;
    return false;
  };
  if (!search(0, budget)) return std::nullopt;
  return coeffs;
}

RawFan fan_affine_plane(int rank) {
  RawFan f;
  f.rank = rank;
  ConeId c;
  for (int i = 0; i < rank; ++i) {
    f.rays.push_back(LatticeVector::Unit(rank, i));
    c.push_back(i);
  }
  f.max_cones.push_back(c);
  return f;
}

RawFan fan_p1() { return {1, {make_vector({1}), make_vector({-1})}, {{0}, {1}}, {}}; }

RawFan fan_p2() {
  return {2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}, {}};
}

RawFan fan_p1xp1() {
  return {2,
          {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, 0}), make_vector({0, -1})},
          {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
          {}};
}

RawFan fan_hirzebruch(int a) {
  return {2,
          {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, a}), make_vector({0, -1})},
          {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
          {}};
}

}  // namespace nctoric
