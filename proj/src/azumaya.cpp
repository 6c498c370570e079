#include "nctoric/azumaya.hpp"

#include "nctoric/error.hpp"
#include "nctoric/parallel.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace nctoric {

namespace {

QIVector flatten(const QIMatrix& m) {
  QIVector v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

bool square_of_size(const QIMatrix& m, Eigen::Index r) { return m.rows() == r && m.cols() == r; }

bool commute(const QIMatrix& a, const QIMatrix& b) { return exactly_equal(QIMatrix(a * b), QIMatrix(b * a)); }

/// Incrementally maintained reduced row basis of a span in Q(i)^n.
class SpanBasis {
 public:
  explicit SpanBasis(Eigen::Index n) : n_(n) {}

  bool add(QIVector v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto p = pivots_[k];
      if (!v(p).is_zero()) {
        const GaussRational f = v(p);
        v -= f * rows_[k];
      }
    }
    Eigen::Index p = 0;
    while (p < n_ && v(p).is_zero()) ++p;
    if (p == n_) return false;
    const GaussRational inv = v(p).inverse();
    v *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (!rows_[k](p).is_zero()) {
        const GaussRational f = rows_[k](p);
        rows_[k] -= f * v;
      }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  Eigen::Index n_;
  std::vector<QIVector> rows_;
  std::vector<Eigen::Index> pivots_;
};

bool independent_abelianizations(const std::vector<ReducedWord>& gens, int rank) {
  if (gens.empty()) return true;
  RatMatrix m(static_cast<Eigen::Index>(gens.size()), rank);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const LatticeVector a = abelianize(gens[i]);
    for (int j = 0; j < rank; ++j) m(static_cast<Eigen::Index>(i), j) = Rational(a(j));
  }
  return nctoric::rank(m) == static_cast<Eigen::Index>(gens.size());
}

std::string factors_text(const std::vector<std::size_t>& seq, const std::vector<ReducedWord>& gens) {
  if (seq.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? " * " : "") + ("(" + to_string(gens[seq[i]]) + ")");
  return s;
}

// ---- Gaussian integers for the root search in a1_probe ----

struct GInt {
  BigInt re, im;
};

BigInt norm(const GInt& g) { return g.re * g.re + g.im * g.im; }

bool divides(const GInt& d, const GInt& g) {
  // g / d = g * conj(d) / N(d)
  const BigInt n = norm(d);
  const BigInt re = g.re * d.re + g.im * d.im;
  const BigInt im = g.im * d.re - g.re * d.im;
  return re % n == 0 && im % n == 0;
}

constexpr long long kNormCap = 1'000'000'000'000LL;

/// All Gaussian integer divisors of g (every associate), or nullopt when N(g)
/// is too large to factor by trial division.
std::optional<std::vector<GInt>> gaussian_divisors(const GInt& g) {
  const BigInt nb = norm(g);
  if (nb > kNormCap) return std::nullopt;
  const long long n = nb.convert_to<long long>();
  std::vector<long long> nd;
  for (long long k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      nd.push_back(k);
      if (k * k != n) nd.push_back(n / k);
    }
  std::vector<GInt> out;
  for (long long m : nd) {
    for (long long x = 0; x * x <= m; ++x) {
      const long long y2 = m - x * x;
      long long y = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(y2))));
      while (y * y > y2) --y;
      while ((y + 1) * (y + 1) <= y2) ++y;
      if (y * y != y2) continue;
      std::set<std::pair<long long, long long>> seen;
      for (long long sx : {1LL, -1LL})
        for (long long sy : {1LL, -1LL}) seen.insert({sx * x, sy * y});
      for (auto [a, b] : seen) {
        GInt d{BigInt(a), BigInt(b)};
        if (divides(d, g)) out.push_back(d);
      }
    }
  }
  return out;
}

GaussRational evaluate_poly(const Polynomial<GaussRational>& p, const GaussRational& x) {
  GaussRational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// p / (t - x), assuming x is a root.
Polynomial<GaussRational> deflate(const Polynomial<GaussRational>& p, const GaussRational& x) {
  const std::size_t d = p.size() - 1;
  Polynomial<GaussRational> q(d);
  GaussRational carry(0);
  for (std::size_t k = d; k-- > 0;) {
    carry = p[k + 1] + carry * x;
    q[k] = carry;
  }
  return q;
}

/// Gaussian-integer coefficients proportional to p.
std::vector<GInt> clear_denominators(const Polynomial<GaussRational>& p) {
  BigInt l = 1;
  for (const auto& c : p) {
    l = boost::multiprecision::lcm(l, denominator(c.real()));
    l = boost::multiprecision::lcm(l, denominator(c.imag()));
  }
  std::vector<GInt> out;
  for (const auto& c : p) {
    const Rational re = c.real() * Rational(l);
    const Rational im = c.imag() * Rational(l);
    out.push_back({numerator(re), numerator(im)});
  }
  return out;
}

std::optional<GaussRational> find_root(const Polynomial<GaussRational>& p) {
  if (p.size() < 2) return std::nullopt;
  if (p[0].is_zero()) return GaussRational(0);
  const auto c = clear_denominators(p);
  const auto num = gaussian_divisors(c.front());
  const auto den = gaussian_divisors(c.back());
  if (!num || !den) return std::nullopt;
  std::set<std::string> tried;
  for (const auto& a : *num)
    for (const auto& b : *den) {
      const GaussRational x = GaussRational(Rational(a.re), Rational(a.im)) / GaussRational(Rational(b.re), Rational(b.im));
      if (!tried.insert(to_string(x)).second) continue;
      if (evaluate_poly(p, x).is_zero()) return x;
    }
  return std::nullopt;
}

// ---- sampling ----

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  GaussRational entry() {
    std::uniform_int_distribution<int> d(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    return {Rational(d(rng_), den(rng_)), Rational(d(rng_), den(rng_))};
  }

  QIMatrix matrix(Eigen::Index r) {
    QIMatrix m(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) m(i, j) = entry();
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

struct Block {
  QIMatrix e;
  bool free = false;
  std::map<ReducedWord, QIMatrix> free_images;  // free maximal block
  std::vector<QIMatrix> letter, letter_inv;     // group homomorphism on letters

  QIMatrix apply(const ReducedWord& w) const {
    if (free) {
      auto it = free_images.find(w);
      if (it == free_images.end()) throw Error(ErrorKind::InvalidArgument, "word outside a free block");
      return it->second;
    }
    QIMatrix acc = e;
    for (int l : w.letters()) {
      const auto i = static_cast<std::size_t>(std::abs(l) - 1);
      acc = (acc * (l > 0 ? letter[i] : letter_inv[i])).eval();
    }
    return acc;
  }
};

}  // namespace

bool is_idempotent(const QIMatrix& e) { return e.rows() == e.cols() && exactly_equal(QIMatrix(e * e), e); }

bool subordinate(const QIMatrix& e1, const QIMatrix& e2) {
  return exactly_equal(QIMatrix(e1 * e2), e1) && exactly_equal(QIMatrix(e2 * e1), e1);
}

std::optional<QIMatrix> corner_inverse(const QIMatrix& y, const QIMatrix& e) {
  const QIMatrix shifted = y + identity<GaussRational>(e.rows()) - e;
  auto inv = inverse(shifted);
  if (!inv) return std::nullopt;
  QIMatrix z = e * *inv * e;
  if (!exactly_equal(QIMatrix(y * z), e) || !exactly_equal(QIMatrix(z * y), e)) return std::nullopt;
  return z;
}

std::string to_string(const QIMatrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

IdemSystem idem_classify(const Fan& fan, const std::map<ConeId, QIMatrix>& e) {
  IdemSystem out;
  out.fan = fan;
  Eigen::Index r = -1;
  for (const auto& c : fan.faces) {
    auto it = e.find(c);
    if (it == e.end()) throw Error(ErrorKind::NotIdempotent, "no idempotent on cone " + to_string(c));
    if (r < 0) r = it->second.rows();
    if (!square_of_size(it->second, r))
      throw Error(ErrorKind::NotIdempotent, "idempotent on " + to_string(c) + " has the wrong shape");
    if (!is_idempotent(it->second))
      throw Error(ErrorKind::NotIdempotent, "e on " + to_string(c) + " is not idempotent: " + to_string(it->second));
    out.e[c] = it->second;
  }
  Report& rep = out.findings;

  out.weak = true;
  for (const auto& [tau, sigma] : fan.incidences()) {
    if (subordinate(out.e.at(tau), out.e.at(sigma))) continue;
    out.weak = false;
    rep.fail("Def 4.2.6(i)", to_string(tau) + "<" + to_string(sigma), "e_tau is not subordinate to e_sigma");
  }
  if (out.weak) rep.pass("Def 4.2.6(i)", "all incidences");

  out.strong = true;
  for (std::size_t i = 0; i < fan.faces.size(); ++i)
    for (std::size_t j = i; j < fan.faces.size(); ++j) {
      const ConeId& a = fan.faces[i];
      const ConeId& b = fan.faces[j];
      const QIMatrix& meet = out.e.at(intersect(a, b));
      for (const auto& prod : {QIMatrix(out.e.at(a) * out.e.at(b)), QIMatrix(out.e.at(b) * out.e.at(a))}) {
        if (exactly_equal(prod, meet)) continue;
        out.strong = false;
        rep.fail("Def 4.2.6(ii)", to_string(a) + "," + to_string(b), "e_sigma e_sigma' != e_{sigma cap sigma'}",
                 to_string(prod) + " vs " + to_string(meet));
        break;
      }
    }
  if (!out.strong) return out;
  rep.pass("Def 4.2.6(ii)", "all pairs");

  // inclusion-exclusion over facets
  for (const auto& sigma : fan.faces) {
    std::vector<ConeId> facets;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      ConeId f = sigma;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
      facets.push_back(std::move(f));
    }
    QIMatrix red = zeros<GaussRational>(r, r);
    for (std::size_t mask = 0; mask < (std::size_t{1} << facets.size()); ++mask) {
      QIMatrix term = out.e.at(sigma);
      int bits = 0;
      for (std::size_t k = 0; k < facets.size(); ++k)
        if (mask >> k & 1) {
          term = (term * out.e.at(facets[k])).eval();
          ++bits;
        }
      if (bits % 2) red -= term;
      else red += term;
    }
    out.reduced[sigma] = red;
  }

  bool lemma_ok = true;
  for (const auto& [a, ea] : out.reduced) {
    if (!is_idempotent(ea)) {
      lemma_ok = false;
      rep.fail("Lemma-Def 4.2.7", to_string(a), "reduced idempotent is not idempotent", to_string(ea));
    }
    for (const auto& [b, eb] : out.reduced)
      if (a < b && !is_zero_matrix(QIMatrix(ea * eb))) {
        lemma_ok = false;
        rep.fail("Lemma-Def 4.2.7", to_string(a) + "," + to_string(b), "reduced idempotents not orthogonal");
      }
  }
  for (const auto& sigma : fan.faces) {
    QIMatrix sum = zeros<GaussRational>(r, r);
    for (const auto& tau : fan.faces)
      if (is_subface(tau, sigma)) sum += out.reduced.at(tau);
    if (!exactly_equal(sum, out.e.at(sigma))) {
      lemma_ok = false;
      rep.fail("Lemma-Def 4.2.7", to_string(sigma), "e_sigma is not the sum of reduced idempotents below it");
    }
  }
  if (lemma_ok) rep.pass("Lemma-Def 4.2.7", "all cones");

  QIMatrix total = zeros<GaussRational>(r, r);
  for (const auto& [c, ec] : out.reduced) total += ec;
  out.complete = exactly_equal(total, identity<GaussRational>(r));
  if (out.complete) {
    rep.pass("Def 4.2.8", "all cones");
  } else {
    rep.fail("Def 4.2.8", "all cones", "reduced idempotents do not sum to 1", to_string(total));
  }
  return out;
}

bool QuasiHomChart::is_zero() const {
  if (!is_zero_matrix(identity_image)) return false;
  for (const auto& [w, m] : images)
    if (!is_zero_matrix(m)) return false;
  return true;
}

QIMatrix eval_word(const QuasiHomChart& chart, const ReducedWord& w, const std::vector<Factor>& factorization) {
  ReducedWord prod(w.rank());
  QIMatrix acc = chart.identity_image;
  for (const auto& f : factorization) {
    auto it = chart.images.find(f.generator);
    if (it == chart.images.end())
      throw Error(ErrorKind::BadFactorization, to_string(f.generator) + " is not a generator of chart " +
                                                   to_string(chart.cone));
    if (!f.inverted) {
      acc = (acc * it->second).eval();
      prod = word_mul(prod, f.generator);
      continue;
    }
    const ReducedWord inv = word_inv(f.generator);
    if (auto g = chart.images.find(inv); g != chart.images.end()) {
      acc = (acc * g->second).eval();
    } else if (auto wit = chart.inverse_witnesses.find(f.generator); wit != chart.inverse_witnesses.end()) {
      acc = (acc * wit->second).eval();
    } else {
      throw Error(ErrorKind::BadFactorization, "no inverse witness for " + to_string(f.generator));
    }
    prod = word_mul(prod, inv);
  }
  if (prod != w)
    throw Error(ErrorKind::BadFactorization, "factors multiply to " + to_string(prod) + ", not " + to_string(w));
  return acc;
}

QIMatrix eval_in_chart(const QuasiHomChart& chart, const SubmonoidFG& sub, const ReducedWord& w,
                       std::size_t max_factors) {
  const auto seq = factorize(sub, w, max_factors);
  if (!seq)
    throw Error(ErrorKind::NoFactorization, to_string(w) + " has no factorization of length <= " +
                                                std::to_string(max_factors) + " in chart " + to_string(chart.cone));
  std::vector<Factor> f;
  for (auto i : *seq) f.push_back({sub.generators()[i], false});
  return eval_word(chart, w, f);
}

QIMatrix eval_elem(const QuasiHomChart& chart, const SubmonoidFG& sub, const AlgElem& a, std::size_t max_factors) {
  QIMatrix acc = zeros<GaussRational>(chart.identity_image.rows(), chart.identity_image.cols());
  for (const auto& [w, c] : a.terms()) acc += c * eval_in_chart(chart, sub, w, max_factors);
  return acc;
}

Report check_quasi_hom(const QuasiHomChart& chart) {
  Report rep("quasi-homomorphism on " + to_string(chart.cone));
  const std::string locus = to_string(chart.cone);
  const QIMatrix& e = chart.identity_image;
  if (chart.is_zero()) {
    rep.info("Def 4.2.1", locus, "zero chart");
  }
  if (!is_idempotent(e)) {
    rep.fail("Def 4.2.1", locus, "identity image is not idempotent", to_string(e));
    return rep;
  }
  bool ok = true;
  for (const auto& [w, g] : chart.images) {
    if (!square_of_size(g, e.rows())) {
      rep.fail("Def 4.2.1", locus, "image of " + to_string(w) + " has the wrong shape");
      ok = false;
      continue;
    }
    if (!exactly_equal(QIMatrix(e * g), g) || !exactly_equal(QIMatrix(g * e), g)) {
      rep.fail("Def 4.2.1", locus, "image of " + to_string(w) + " is not absorbed by the identity image",
               to_string(g));
      ok = false;
    }
    const ReducedWord inv = word_inv(w);
    if (auto it = chart.images.find(inv); it != chart.images.end() && !w.is_identity()) {
      if (!exactly_equal(QIMatrix(g * it->second), e)) {
        rep.fail("Def 4.2.1", locus, "images of " + to_string(w) + " and its inverse do not multiply to e");
        ok = false;
      }
    }
  }
  for (const auto& [w, z] : chart.inverse_witnesses) {
    auto it = chart.images.find(w);
    if (it == chart.images.end()) {
      rep.fail("Def 4.2.1", locus, "witness for unknown generator " + to_string(w));
      ok = false;
      continue;
    }
    if (!exactly_equal(QIMatrix(it->second * z), e) || !exactly_equal(QIMatrix(z * it->second), e)) {
      rep.fail("Def 4.2.1", locus, "witness is not a corner inverse of the image of " + to_string(w), to_string(z));
      ok = false;
    }
  }
  if (ok) rep.pass("Def 4.2.1", locus);
  return rep;
}

Report check_gluing_pair(const AdmissibleSystem& sys, const QuasiHomChart& upper, const QuasiHomChart& lower) {
  const std::string locus = to_string(lower.cone) + "<" + to_string(upper.cone);
  Report rep("gluing " + locus);
  const QIMatrix& et = lower.identity_image;
  const QIMatrix& es = upper.identity_image;
  if (subordinate(et, es)) {
    rep.pass("Def 4.2.3(a)", locus);
  } else {
    rep.fail("Def 4.2.3(a)", locus, "e_tau is not subordinate to e_sigma", to_string(et) + " vs " + to_string(es));
  }
  bool b_ok = true;
  for (const auto& [w, g] : upper.images)
    if (!commute(g, et)) {
      rep.fail("Def 4.2.3(b)", locus, "image of " + to_string(w) + " does not commute with e_tau", to_string(g));
      b_ok = false;
    }
  if (b_ok) rep.pass("Def 4.2.3(b)", locus);
  bool c_ok = true;
  for (const auto& [w, g] : upper.images) {
    try {
      const QIMatrix down = eval_in_chart(lower, sys.at(lower.cone), w);
      if (!exactly_equal(QIMatrix(et * g), down)) {
        rep.fail("Def 4.2.3(c)", locus, "e_tau f_sigma(" + to_string(w) + ") != f_tau(" + to_string(w) + ")",
                 to_string(QIMatrix(et * g)) + " vs " + to_string(down));
        c_ok = false;
      }
    } catch (const Error& err) {
      rep.fail("Def 4.2.3(c)", locus, err.what());
      c_ok = false;
    }
  }
  if (c_ok) rep.pass("Def 4.2.3(c)", locus);
  return rep;
}

Report check_relations(const QuasiHomChart& chart, const SubmonoidFG& sub, std::size_t relation_bound) {
  const std::string locus = to_string(chart.cone);
  Report rep("relations on " + locus);
  if (chart.is_zero()) {
    rep.pass("Def 4.2.3", locus, "zero chart respects every relation");
    return rep;
  }
  const auto& gens = sub.generators();
  if (independent_abelianizations(gens, sub.rank())) {
    rep.pass("Def 4.2.3", locus, "chart is free on its generators");
    return rep;
  }
  // keep the enumeration at desk scale
  constexpr double kMaxProducts = 60000;
  std::size_t bound = relation_bound;
  while (bound > 1 && std::pow(static_cast<double>(gens.size()), static_cast<double>(bound)) > kMaxProducts) --bound;

  struct Seen {
    QIMatrix image;
    std::vector<std::size_t> seq;
  };
  std::map<ReducedWord, Seen> first;
  first.emplace(ReducedWord(sub.rank()), Seen{chart.identity_image, {}});
  std::vector<std::pair<std::vector<std::size_t>, QIMatrix>> level{{{}, chart.identity_image}};
  std::vector<ReducedWord> level_words{ReducedWord(sub.rank())};
  bool ok = true;
  for (std::size_t len = 1; len <= bound && ok; ++len) {
    std::vector<std::pair<std::vector<std::size_t>, QIMatrix>> next;
    std::vector<ReducedWord> next_words;
    for (std::size_t k = 0; k < level.size() && ok; ++k) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto it = chart.images.find(gens[g]);
        if (it == chart.images.end()) {
          rep.fail("Def 4.2.3", locus, "no image for generator " + to_string(gens[g]));
          return rep;
        }
        auto seq = level[k].first;
        seq.push_back(g);
        QIMatrix img = level[k].second * it->second;
        ReducedWord w = word_mul(level_words[k], gens[g]);
        auto [pos, fresh] = first.try_emplace(w, Seen{img, seq});
        if (!fresh && !exactly_equal(pos->second.image, img)) {
          rep.fail("Def 4.2.3", locus, "chart map does not respect a relation of " + to_string(w),
                   factors_text(pos->second.seq, gens) + " vs " + factors_text(seq, gens));
          ok = false;
          break;
        }
        next.emplace_back(std::move(seq), std::move(img));
        next_words.push_back(std::move(w));
      }
    }
    level = std::move(next);
    level_words = std::move(next_words);
  }
  if (ok)
    rep.bound_relative("Def 4.2.3", locus,
                       "generator relations respected among products of <= " + std::to_string(bound) + " factors");
  return rep;
}

std::map<ConeId, QIMatrix> identity_images(const MorphismData& m) {
  std::map<ConeId, QIMatrix> out;
  for (const auto& [c, chart] : m.charts) out[c] = chart.identity_image;
  return out;
}

Report verify_morphism(const MorphismData& m) {
  const AdmissibleSystem& sys = m.system;
  const Fan& fan = sys.fan;
  Report out("morphism to the soft noncommutative toric scheme");

  Report shape("chart data");
  for (const auto& c : fan.faces) {
    auto it = m.charts.find(c);
    if (it == m.charts.end()) {
      shape.fail("Def 4.2.9(i)", to_string(c), "no chart map");
      continue;
    }
    const QuasiHomChart& chart = it->second;
    if (!square_of_size(chart.identity_image, m.r))
      shape.fail("Def 4.2.9(i)", to_string(c), "identity image is not " + std::to_string(m.r) + "x" + std::to_string(m.r));
    const auto& gens = sys.at(c).generators();
    for (const auto& g : gens)
      if (!chart.images.count(g)) shape.fail("Def 4.2.9(i)", to_string(c), "no image for generator " + to_string(g));
    for (const auto& [w, img] : chart.images) {
      if (std::find(gens.begin(), gens.end(), w) == gens.end())
        shape.fail("Def 4.2.9(i)", to_string(c), to_string(w) + " is not a chart generator");
      if (!square_of_size(img, m.r)) shape.fail("Def 4.2.9(i)", to_string(c), "image of " + to_string(w) + " misshapen");
    }
    if (chart.is_zero()) continue;
    for (const auto& g : gens) {
      const ReducedWord inv = word_inv(g);
      if (g.is_identity() || !sys.at(c).accepts(inv)) continue;
      if (!chart.images.count(inv) && !chart.inverse_witnesses.count(g))
        shape.fail("Def 4.2.1", to_string(c), "unit generator " + to_string(g) + " has no corner inverse");
    }
  }
  for (const auto& [c, chart] : m.charts)
    if (!fan.is_face(c)) shape.fail("Def 4.2.9(i)", to_string(c), "chart on a cone outside the fan");
  out.merge(shape);
  if (!shape.ok()) {
    out.fail("Def 4.2.9(i)", "all cones", "chart data incomplete");
    return out;
  }

  std::vector<Report> per_chart(fan.faces.size());
  parallel_for(fan.faces.size(), [&](std::size_t k) {
    const ConeId& c = fan.faces[k];
    const QuasiHomChart& chart = m.charts.at(c);
    per_chart[k] = check_quasi_hom(chart);
    if (per_chart[k].ok()) per_chart[k].merge(check_relations(chart, sys.at(c)));
  });
  const auto inc = fan.incidences();
  std::vector<Report> per_pair(inc.size());
  parallel_for(inc.size(), [&](std::size_t k) {
    const auto& [tau, sigma] = inc[k];
    per_pair[k] = check_gluing_pair(sys, m.charts.at(sigma), m.charts.at(tau));
  });
  bool cond_i = true;
  for (const auto& r : per_chart) {
    out.merge(r);
    cond_i = cond_i && r.ok();
  }
  for (const auto& r : per_pair) {
    out.merge(r);
    cond_i = cond_i && r.ok();
  }
  if (cond_i) {
    out.pass("Def 4.2.9(i)", "all incidences", "chart maps are quasi-homomorphisms and glue");
  } else {
    out.fail("Def 4.2.9(i)", "all incidences", "chart maps fail to be quasi-homomorphisms or to glue");
  }

  try {
    const IdemSystem idem = idem_classify(fan, identity_images(m));
    out.merge(idem.findings);
    if (idem.strong && idem.complete) {
      out.pass("Def 4.2.9(ii)", "all cones", "identity images form a complete strong system");
    } else {
      out.fail("Def 4.2.9(ii)", "all cones",
               std::string("identity images are ") + (idem.strong ? "strong but not complete" : "not strong"));
    }
  } catch (const Error& err) {
    out.fail("Def 4.2.9(ii)", "all cones", err.what());
  }
  return out;
}

std::vector<QIMatrix> surrogate_basis(const MorphismData& m) {
  const Report rep = verify_morphism(m);
  if (!rep.ok()) throw Error(ErrorKind::MorphismInvalid, "morphism fails verification");
  const Eigen::Index r = m.r;
  SpanBasis span(r * r);
  std::vector<QIMatrix> basis;
  auto offer = [&](const QIMatrix& x) {
    if (span.add(flatten(x))) basis.push_back(x);
  };
  offer(identity<GaussRational>(r));
  for (const auto& [c, chart] : m.charts) {
    offer(chart.identity_image);
    for (const auto& [w, img] : chart.images) offer(img);
    for (const auto& [w, z] : chart.inverse_witnesses) offer(z);
  }
  std::size_t done = 0;
  while (done < basis.size()) {
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = (i < done ? done : 0); j < n; ++j) {
        offer(QIMatrix(basis[i] * basis[j]));
        offer(QIMatrix(basis[j] * basis[i]));
      }
    done = n;
  }
  return basis;
}

BoundedIdeal image_kernel_bounded(const MorphismData& m, const ConeId& cone, std::size_t bound) {
  const Report rep = verify_morphism(m);
  if (!rep.ok()) throw Error(ErrorKind::MorphismInvalid, "morphism fails verification");
  const QuasiHomChart& chart = m.charts.at(cone);
  const SubmonoidFG& sub = m.system.at(cone);
  const auto& gens = sub.generators();

  std::vector<ReducedWord> words{ReducedWord(m.system.rank())};
  std::vector<QIMatrix> images{chart.identity_image};
  std::set<ReducedWord> seen{words[0]};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= bound; ++len) {
    const std::size_t end = words.size();
    for (std::size_t k = begin; k < end; ++k)
      for (const auto& g : gens) {
        ReducedWord w = word_mul(words[k], g);
        if (!seen.insert(w).second) continue;
        images.push_back(QIMatrix(images[k] * chart.images.at(g)));
        words.push_back(std::move(w));
      }
    begin = end;
  }

  const Eigen::Index rr = static_cast<Eigen::Index>(m.r) * m.r;
  QIMatrix ev(rr, static_cast<Eigen::Index>(words.size()));
  for (std::size_t j = 0; j < words.size(); ++j) ev.col(static_cast<Eigen::Index>(j)) = flatten(images[j]);
  const QIMatrix ker = nullspace(ev);

  BoundedIdeal ideal;
  ideal.rank = m.system.rank();
  std::size_t maxlen = 0;
  for (const auto& w : words) maxlen = std::max(maxlen, w.length());
  ideal.degree_bound = maxlen;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    AlgElem a(ideal.rank);
    for (std::size_t j = 0; j < words.size(); ++j) a.add_term(words[j], ker(static_cast<Eigen::Index>(j), k));
    ideal.generators.push_back(std::move(a));
  }
  return ideal;
}

A1Probe a1_probe(const QIMatrix& a) {
  A1Probe out;
  out.minpoly = minimal_polynomial<GaussRational>(a);
  const Eigen::Index r = a.rows();
  Polynomial<GaussRational> rest = out.minpoly;
  while (rest.size() > 1) {
    auto x = find_root(rest);
    if (!x) break;
    int mult = 0;
    while (rest.size() > 1 && evaluate_poly(rest, *x).is_zero()) {
      rest = deflate(rest, *x);
      ++mult;
    }
    QIMatrix shifted = a;
    for (Eigen::Index i = 0; i < r; ++i) shifted(i, i) -= *x;
    out.roots.push_back({*x, mult, static_cast<long long>(r * r - r * rank(shifted))});
  }
  if (rest.size() > 1) out.unsplit = rest;
  std::sort(out.roots.begin(), out.roots.end(), [](const A1Root& u, const A1Root& v) {
    if (u.value.real() != v.value.real()) return u.value.real() < v.value.real();
    return u.value.imag() < v.value.imag();
  });
  return out;
}

MorphismData sample_matrix_model(const AdmissibleSystem& sys, int r,
                                 const std::optional<std::map<ConeId, QIMatrix>>& pattern, std::uint64_t seed) {
  const Fan& fan = sys.fan;
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "matrix size must be positive");
  std::map<ConeId, QIMatrix> e;
  if (pattern) {
    e = *pattern;
  } else {
    for (const auto& c : fan.faces) e[c] = zeros<GaussRational>(r, r);
    e[fan.max_cones.front()] = identity<GaussRational>(r);
  }
  for (const auto& c : fan.faces)
    if (!e.count(c)) throw Error(ErrorKind::PatternIncomplete, "pattern has no idempotent on " + to_string(c));
  const IdemSystem idem = idem_classify(fan, e);
  if (!idem.strong) throw Error(ErrorKind::PatternIncomplete, "pattern is not a strong system");
  if (!idem.complete) throw Error(ErrorKind::PatternIncomplete, "pattern is not complete");
  if (idem.e.begin()->second.rows() != r)
    throw Error(ErrorKind::PatternIncomplete, "pattern matrices are not " + std::to_string(r) + "x" + std::to_string(r));

  Sampler rnd(seed);
  std::map<ConeId, Block> blocks;
  for (const auto& rho : fan.faces) {
    const QIMatrix& er = idem.reduced.at(rho);
    if (is_zero_matrix(er)) continue;
    Block b;
    b.e = er;
    const auto& gens = sys.at(rho).generators();
    b.free = fan.is_maximal(rho) && independent_abelianizations(gens, fan.rank);
    if (b.free) {
      for (const auto& g : gens) b.free_images[g] = er * rnd.matrix(r) * er;
    } else {
      for (int i = 0; i < fan.rank; ++i) {
        for (int attempt = 0;; ++attempt) {
          if (attempt == 1000) throw Error(ErrorKind::InvalidArgument, "could not sample an invertible block");
          QIMatrix y = er * rnd.matrix(r) * er;
          if (auto z = corner_inverse(y, er)) {
            b.letter.push_back(std::move(y));
            b.letter_inv.push_back(std::move(*z));
            break;
          }
        }
      }
    }
    blocks.emplace(rho, std::move(b));
  }

  MorphismData m;
  m.r = r;
  m.system = sys;
  for (const auto& tau : fan.faces) {
    QuasiHomChart chart;
    chart.cone = tau;
    chart.identity_image = idem.e.at(tau);
    const auto& sub = sys.at(tau);
    auto image_of = [&](const ReducedWord& w) {
      QIMatrix acc = zeros<GaussRational>(r, r);
      for (const auto& [rho, b] : blocks)
        if (is_subface(rho, tau)) acc += b.apply(w);
      return acc;
    };
    for (const auto& g : sub.generators()) chart.images[g] = image_of(g);
    for (const auto& g : sub.generators()) {
      const ReducedWord inv = word_inv(g);
      if (!g.is_identity() && !chart.images.count(inv) && sub.accepts(inv)) chart.inverse_witnesses[g] = image_of(inv);
    }
    m.charts.emplace(tau, std::move(chart));
  }
  return m;
}

}  // namespace nctoric
