#include "nctoric/ncalgebra.hpp"

#include "nctoric/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace nctoric {

namespace {

void require_same_rank(const AlgElem& a, const AlgElem& b) {
  if (a.rank() != b.rank())
    throw Error(ErrorKind::RankMismatch,
                "algebra elements of rank " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
}

std::string coeff_text(const GaussRational& c, bool& negative) {
  std::string s = to_string(c);
  negative = false;
  if (!c.is_real() && !c.real().is_zero()) return "(" + s + ")";
  if (s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  return s;
}

}  // namespace

AlgElem::AlgElem(const ReducedWord& w, GaussRational c) : rank_(w.rank()) {
  if (!c.is_zero()) terms_.emplace(w, std::move(c));
}

AlgElem AlgElem::constant(int rank, GaussRational c) { return AlgElem(ReducedWord(rank), std::move(c)); }

std::size_t AlgElem::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.length());
  return m;
}

GaussRational AlgElem::coefficient(const ReducedWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void AlgElem::add_term(const ReducedWord& w, const GaussRational& c) {
  if (c.is_zero()) return;
  if (w.rank() != rank_) throw Error(ErrorKind::RankMismatch, "term " + to_string(w));
  auto [it, fresh] = terms_.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgElem alg_add(const AlgElem& a, const AlgElem& b) {
  require_same_rank(a, b);
  AlgElem out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, c);
  return out;
}

AlgElem alg_sub(const AlgElem& a, const AlgElem& b) {
  require_same_rank(a, b);
  AlgElem out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, -c);
  return out;
}

AlgElem alg_scale(const AlgElem& a, const GaussRational& c) {
  AlgElem out(a.rank());
  if (c.is_zero()) return out;
  for (const auto& [w, x] : a.terms()) out.add_term(w, x * c);
  return out;
}

AlgElem alg_mul(const AlgElem& a, const AlgElem& b) {
  require_same_rank(a, b);
  AlgElem out(a.rank());
  for (const auto& [u, x] : a.terms())
    for (const auto& [v, y] : b.terms()) out.add_term(word_mul(u, v), x * y);
  return out;
}

AlgElem commutator(const AlgElem& a, const AlgElem& b) { return alg_sub(alg_mul(a, b), alg_mul(b, a)); }

LaurentPoly abelianize_elem(const AlgElem& a) {
  LaurentPoly out;
  for (const auto& [w, c] : a.terms()) {
    auto [it, fresh] = out.emplace(abelianize(w), c);
    if (fresh) continue;
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
  return out;
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      const LatticeVector s = u + v;
      auto [it, fresh] = out.emplace(s, x * y);
      if (fresh) continue;
      it->second += x * y;
      if (it->second.is_zero()) out.erase(it);
    }
  return out;
}

std::string to_string(const LaurentPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [v, c] : p) {
    bool neg = false;
    std::string coeff = coeff_text(c, neg);
    std::string mono;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (v(i) != 1) mono += "^" + std::to_string(v(i));
    }
    std::string term = mono.empty() ? coeff : (coeff == "1" ? mono : coeff + "*" + mono);
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

AlgElem parse_alg(std::string_view text, int rank) {
  std::vector<std::pair<bool, std::string>> pieces;  // (negative, body)
  std::string cur;
  bool neg = false;
  bool pending_sign = false;
  int depth = 0;
  char prev = 0;
  auto trimmed = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && prev != '^') {
      const std::string body = trimmed(cur);
      if (!body.empty()) {
        pieces.emplace_back(neg, body);
      } else if (pending_sign) {
        throw Error(ErrorKind::ParseError, "two signs in a row in '" + std::string(text) + "'");
      }
      cur.clear();
      neg = c == '-';
      pending_sign = true;
      prev = c;
      continue;
    }
    cur.push_back(c);
    if (!std::isspace(static_cast<unsigned char>(c))) {
      prev = c;
      pending_sign = false;
    }
  }
  if (depth != 0) throw Error(ErrorKind::ParseError, "unbalanced parentheses in '" + std::string(text) + "'");
  if (pending_sign) throw Error(ErrorKind::ParseError, "dangling sign in '" + std::string(text) + "'");
  if (const std::string body = trimmed(cur); !body.empty()) pieces.emplace_back(neg, body);

  AlgElem out(rank);
  for (const auto& [negative, body] : pieces) {
    GaussRational c(1);
    std::string word_text;
    const auto star = body.find('*');
    if (star != std::string::npos) {
      c = parse_gauss(body.substr(0, star));
      word_text = body.substr(star + 1);
    } else if (body.front() == 'z' || body.front() == 'Z') {
      word_text = body;
    } else {
      c = parse_gauss(body);
    }
    out.add_term(parse_word(word_text, rank), negative ? -c : c);
  }
  return out;
}

std::string to_string(const AlgElem& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : a.terms()) {
    bool neg = false;
    const std::string coeff = coeff_text(c, neg);
    std::string term;
    if (w.is_identity()) {
      term = coeff;
    } else if (coeff == "1") {
      term = to_string(w);
    } else {
      term = coeff + "*" + to_string(w);
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

std::vector<ReducedWord> words_up_to(int rank, std::size_t len) {
  std::vector<ReducedWord> out{ReducedWord(rank)};
  std::size_t begin = 0;
  for (std::size_t l = 1; l <= len; ++l) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      const ReducedWord w = out[i];
      for (int x = 1; x <= rank; ++x)
        for (int s : {x, -x}) {
          if (!w.is_identity() && w.letters().back() == -s) continue;
          std::vector<int> ls = w.letters();
          ls.push_back(s);
          out.emplace_back(rank, ls);
        }
    }
    begin = end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

AlgElem IdealCertificate::reconstruct(const BoundedIdeal& ideal) const {
  AlgElem out(ideal.rank);
  for (const auto& t : terms)
    out = alg_add(out, alg_scale(alg_mul(alg_mul(AlgElem(t.left), ideal.generators.at(t.generator)), AlgElem(t.right)),
                                 t.coeff));
  return out;
}

std::string IdealCertificate::describe(const BoundedIdeal& ideal) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i) os << " + ";
    os << "(" << to_string(t.coeff) << ")*[" << to_string(t.left) << "]*(" << to_string(ideal.generators.at(t.generator))
       << ")*[" << to_string(t.right) << "]";
  }
  return os.str();
}

namespace {

using SparseVec = std::map<std::size_t, GaussRational>;

void axpy(SparseVec& v, const GaussRational& f, const SparseVec& w) {
  for (const auto& [k, x] : w) {
    auto [it, fresh] = v.emplace(k, f * x);
    if (fresh) continue;
    it->second += f * x;
    if (it->second.is_zero()) v.erase(it);
  }
}

/// Incremental sparse echelon basis; each vector keeps its pivot at its
/// smallest index and remembers which input columns it combines.
class SparseEchelon {
 public:
  void insert(SparseVec v, std::size_t column) {
    SparseVec track{{column, GaussRational(1)}};
    reduce(v, track);
    if (v.empty()) return;
    const std::size_t p = v.begin()->first;
    const GaussRational inv = v.begin()->second.inverse();
    for (auto& [k, x] : v) x *= inv;
    for (auto& [k, x] : track) x *= inv;
    basis_.emplace(p, Entry{std::move(v), std::move(track)});
  }

  /// Combination of input columns producing v, if v is in the span.
  std::optional<SparseVec> express(SparseVec v) const {
    SparseVec track;
    reduce(v, track);
    if (!v.empty()) return std::nullopt;
    for (auto& [k, x] : track) x = -x;
    return track;
  }

 private:
  struct Entry {
    SparseVec vec;
    SparseVec track;
  };

  void reduce(SparseVec& v, SparseVec& track) const {
    auto it = v.begin();
    while (it != v.end()) {
      const std::size_t row = it->first;
      auto b = basis_.find(row);
      if (b == basis_.end()) {
        ++it;
        continue;
      }
      const GaussRational f = -it->second;
      axpy(v, f, b->second.vec);
      axpy(track, f, b->second.track);
      it = v.upper_bound(row);
    }
  }

  std::map<std::size_t, Entry> basis_;
};

}  // namespace

MembershipResult bounded_ideal_member(const BoundedIdeal& ideal, const AlgElem& target) {
  if (target.max_length() > ideal.degree_bound)
    throw Error(ErrorKind::TargetExceedsBound, "target has a word of length " + std::to_string(target.max_length()) +
                                                   " above bound " + std::to_string(ideal.degree_bound));
  MembershipResult result;
  std::unordered_map<ReducedWord, std::size_t, ReducedWordHash> row_of;
  auto row = [&](const ReducedWord& w) {
    auto [it, fresh] = row_of.emplace(w, row_of.size());
    return it->second;
  };
  auto to_sparse = [&](const AlgElem& a) {
    SparseVec v;
    for (const auto& [w, c] : a.terms()) v.emplace(row(w), c);
    return v;
  };

  std::vector<IdealTerm> columns;
  SparseEchelon echelon;
  const std::size_t d = ideal.degree_bound;
  std::vector<std::vector<ReducedWord>> words_by_budget(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    words_by_budget[k] = words_up_to(ideal.rank, k);
    if (ideal.ambient) {
      auto& ws = words_by_budget[k];
      ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const ReducedWord& w) { return !ideal.ambient->accepts(w); }),
               ws.end());
    }
  }
  for (std::size_t gi = 0; gi < ideal.generators.size(); ++gi) {
    const AlgElem& g = ideal.generators[gi];
    if (g.is_zero() || g.max_length() > d) continue;
    const std::size_t slack = d - g.max_length();
    for (const auto& x : words_by_budget[slack]) {
      const AlgElem xg = alg_mul(AlgElem(x), g);
      for (const auto& y : words_by_budget[slack - x.length()]) {
        const AlgElem col = alg_mul(xg, AlgElem(y));
        if (col.is_zero()) continue;
        echelon.insert(to_sparse(col), columns.size());
        columns.push_back({GaussRational(1), x, gi, y});
      }
    }
  }
  result.columns = columns.size();
  const SparseVec t = to_sparse(target);
  result.rows = row_of.size();
  if (auto combo = echelon.express(t)) {
    IdealCertificate cert;
    for (const auto& [k, c] : *combo) {
      IdealTerm term = columns[k];
      term.coeff = c;
      cert.terms.push_back(std::move(term));
    }
    result.certificate = std::move(cert);
  }
  return result;
}

BoundedIdeal l_commutative_gens(int rank, std::size_t l, std::size_t degree_bound) {
  if (degree_bound < l + 1)
    throw Error(ErrorKind::InvalidArgument, "degree bound must be at least l+1");
  BoundedIdeal ideal;
  ideal.rank = rank;
  ideal.degree_bound = degree_bound;
  std::vector<ReducedWord> positive{ReducedWord(rank)};
  for (std::size_t k = 0; k < l; ++k) {
    std::vector<ReducedWord> next;
    for (const auto& w : positive)
      for (int x = 1; x <= rank; ++x) next.push_back(word_mul(w, ReducedWord::letter(rank, x)));
    positive = std::move(next);
  }
  for (int x = 1; x <= rank; ++x)
    for (const auto& g : positive) {
      const AlgElem c = commutator(AlgElem(ReducedWord::letter(rank, x)), AlgElem(g));
      if (c.is_zero()) continue;
      const AlgElem neg = alg_scale(c, GaussRational(-1));
      const bool dup = std::any_of(ideal.generators.begin(), ideal.generators.end(),
                                   [&](const AlgElem& h) { return h == c || h == neg; });
      if (!dup) ideal.generators.push_back(c);
    }
  return ideal;
}

}  // namespace nctoric
