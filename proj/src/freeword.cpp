#include "nctoric/freeword.hpp"

#include "nctoric/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nctoric {

namespace {

void check_letter(int rank, int l) {
  if (l == 0 || l > rank || -l > rank)
    throw Error(ErrorKind::InvalidArgument,
                "letter index " + std::to_string(l) + " outside rank " + std::to_string(rank));
}

void push_reduced(std::vector<int>& out, int l) {
  if (!out.empty() && out.back() == -l) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

void require_same_rank(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank() != b.rank())
    throw Error(ErrorKind::RankMismatch, "words of rank " + std::to_string(a.rank()) + " and " +
                                             std::to_string(b.rank()));
}

std::size_t letter_slot(int l) {
  return l > 0 ? static_cast<std::size_t>(2 * (l - 1)) : static_cast<std::size_t>(2 * (-l - 1) + 1);
}

}  // namespace

ReducedWord::ReducedWord(int rank, const std::vector<int>& letters) : rank_(rank) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    check_letter(rank, l);
    push_reduced(letters_, l);
  }
}

bool operator<(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
  return a.letters_ < b.letters_;
}

std::size_t ReducedWordHash::operator()(const ReducedWord& w) const {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9e3779b97f4a7c15ULL;
  for (int l : w.letters()) h = (h ^ static_cast<std::size_t>(l + 64)) * 0x100000001b3ULL;
  return h;
}

ReducedWord word_mul(const ReducedWord& a, const ReducedWord& b) {
  require_same_rank(a, b);
  std::vector<int> out = a.letters();
  for (int l : b.letters()) push_reduced(out, l);
  return ReducedWord(a.rank(), out);
}

ReducedWord word_inv(const ReducedWord& a) {
  std::vector<int> out(a.letters().rbegin(), a.letters().rend());
  for (int& l : out) l = -l;
  return ReducedWord(a.rank(), out);
}

ReducedWord word_pow(const ReducedWord& a, long long k) {
  const ReducedWord base = k < 0 ? word_inv(a) : a;
  ReducedWord acc(a.rank());
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) acc = word_mul(acc, base);
  return acc;
}

LatticeVector abelianize(const ReducedWord& a) {
  LatticeVector v = LatticeVector::Zero(a.rank());
  for (int l : a.letters()) v(std::abs(l) - 1) += l > 0 ? 1 : -1;
  return v;
}

ReducedWord canonical_lift(const LatticeVector& v) {
  std::vector<int> letters;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int l = static_cast<int>(i + 1);
    for (long long k = 0; k < (v(i) < 0 ? -v(i) : v(i)); ++k) letters.push_back(v(i) < 0 ? -l : l);
  }
  return ReducedWord(static_cast<int>(v.size()), letters);
}

ReducedWord parse_word(std::string_view text, int rank) {
  std::istringstream in{std::string(text)};
  std::vector<int> letters;
  std::string tok;
  while (in >> tok) {
    if (tok == "e" || tok == "1") continue;
    if (tok.size() < 2 || (tok[0] != 'z' && tok[0] != 'Z'))
      throw Error(ErrorKind::ParseError, "bad word factor '" + tok + "' in '" + std::string(text) + "'");
    const auto caret = tok.find('^');
    const std::string idx_text = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (idx_text.empty() || !std::all_of(idx_text.begin(), idx_text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorKind::ParseError, "bad generator index in '" + tok + "'");
    const long idx = std::stol(idx_text);
    if (idx < 1 || idx > rank)
      throw Error(ErrorKind::ParseError, "generator index " + idx_text + " outside 1.." + std::to_string(rank) +
                                             " in '" + std::string(text) + "'");
    long long exp = 1;
    if (caret != std::string::npos) {
      const std::string e = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        exp = std::stoll(e, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (e.empty() || used != e.size()) throw Error(ErrorKind::ParseError, "bad exponent in '" + tok + "'");
    }
    const int l = static_cast<int>(idx);
    for (long long k = 0; k < (exp < 0 ? -exp : exp); ++k) letters.push_back(exp < 0 ? -l : l);
  }
  return ReducedWord(rank, letters);
}

std::string to_string(const ReducedWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long long run = static_cast<long long>(j - i) * (ls[i] < 0 ? -1 : 1);
    if (!out.empty()) out += ' ';
    out += "z" + std::to_string(std::abs(ls[i]));
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

// Flower automaton through state 0, closed under cancellation: an epsilon
// move p => q is added whenever p -x-> r =>* s -x^-1-> q.
struct SubmonoidFG::Automaton {
  std::size_t states = 1;
  std::vector<std::vector<std::vector<std::size_t>>> out;  // [state][letter slot]
  std::vector<std::vector<char>> eps;                      // reflexive-transitive

  void add_eps(std::size_t p, std::size_t q) {
    for (std::size_t a = 0; a < states; ++a) {
      if (!eps[a][p]) continue;
      for (std::size_t b = 0; b < states; ++b)
        if (eps[q][b]) eps[a][b] = 1;
    }
  }
};

SubmonoidFG::SubmonoidFG(int rank, std::vector<ReducedWord> generators)
    : rank_(rank), generators_(std::move(generators)) {
  auto a = std::make_shared<Automaton>();
  const std::size_t slots = static_cast<std::size_t>(2 * rank);
  std::vector<std::tuple<std::size_t, int, std::size_t>> edges;
  for (const auto& g : generators_) {
    if (g.rank() != rank)
      throw Error(ErrorKind::RankMismatch, "generator " + to_string(g) + " has rank " + std::to_string(g.rank()));
    if (g.is_identity()) continue;
    std::size_t from = 0;
    for (std::size_t k = 0; k < g.length(); ++k) {
      const std::size_t to = k + 1 == g.length() ? 0 : a->states++;
      edges.emplace_back(from, g.letters()[k], to);
      from = to;
    }
  }
  a->out.assign(a->states, std::vector<std::vector<std::size_t>>(slots));
  for (const auto& [p, l, q] : edges) a->out[p][letter_slot(l)].push_back(q);
  a->eps.assign(a->states, std::vector<char>(a->states, 0));
  for (std::size_t s = 0; s < a->states; ++s) a->eps[s][s] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [p, l, r] : edges) {
      const std::size_t back = letter_slot(-l);
      for (std::size_t s = 0; s < a->states; ++s) {
        if (!a->eps[r][s]) continue;
        for (std::size_t q : a->out[s][back]) {
          if (a->eps[p][q]) continue;
          a->add_eps(p, q);
          changed = true;
        }
      }
    }
  }
  automaton_ = std::move(a);
}

std::size_t SubmonoidFG::state_count() const { return automaton_ ? automaton_->states : 0; }

bool SubmonoidFG::accepts(const ReducedWord& w) const {
  if (w.rank() != rank_)
    throw Error(ErrorKind::RankMismatch, "word " + to_string(w) + " against submonoid of rank " + std::to_string(rank_));
  if (w.is_identity()) return true;
  const Automaton& a = *automaton_;
  std::vector<char> cur(a.states, 0);
  for (std::size_t s = 0; s < a.states; ++s) cur[s] = a.eps[0][s];
  for (int l : w.letters()) {
    std::vector<char> next(a.states, 0);
    bool any = false;
    const std::size_t slot = letter_slot(l);
    for (std::size_t s = 0; s < a.states; ++s) {
      if (!cur[s]) continue;
      for (std::size_t t : a.out[s][slot])
        for (std::size_t u = 0; u < a.states; ++u)
          if (a.eps[t][u]) next[u] = any = true;
    }
    if (!any) return false;
    cur.swap(next);
  }
  return cur[0] != 0;
}

SubmonoidFG compile_submonoid(int rank, std::vector<ReducedWord> generators) {
  return SubmonoidFG(rank, std::move(generators));
}

std::optional<std::vector<std::size_t>> factorize(const SubmonoidFG& s, const ReducedWord& w,
                                                  std::size_t max_factors) {
  if (w.is_identity()) return std::vector<std::size_t>{};
  if (!s.accepts(w)) return std::nullopt;
  struct Node {
    std::size_t parent;
    std::size_t gen;
  };
  std::unordered_map<ReducedWord, std::size_t, ReducedWordHash> index;
  std::vector<ReducedWord> words{ReducedWord(s.rank())};
  std::vector<Node> nodes{{0, 0}};
  index.emplace(words[0], 0);
  std::size_t begin = 0;
  for (std::size_t depth = 0; depth < max_factors; ++depth) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t g = 0; g < s.generators().size(); ++g) {
        ReducedWord next = word_mul(words[i], s.generators()[g]);
        if (index.count(next)) continue;
        index.emplace(next, words.size());
        words.push_back(next);
        nodes.push_back({i, g});
        if (next == w) {
          std::vector<std::size_t> seq;
          for (std::size_t k = words.size() - 1; k != 0; k = nodes[k].parent) seq.push_back(nodes[k].gen);
          std::reverse(seq.begin(), seq.end());
          return seq;
        }
      }
    }
    begin = end;
  }
  return std::nullopt;
}

bool member(const SubmonoidFG& s, const ReducedWord& w) { return s.accepts(w); }

bool is_unit_in(const SubmonoidFG& s, const ReducedWord& w) {
  return s.accepts(w) && s.accepts(word_inv(w));
}

bool contains_submonoid(const SubmonoidFG& big, const SubmonoidFG& small) {
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const ReducedWord& g) { return big.accepts(g); });
}

bool same_submonoid(const SubmonoidFG& a, const SubmonoidFG& b) {
  return contains_submonoid(a, b) && contains_submonoid(b, a);
}

std::vector<ReducedWord> enumerate_products(const std::vector<ReducedWord>& generators,
                                            std::size_t max_factors) {
  if (generators.empty()) return {};
  const int rank = generators.front().rank();
  std::unordered_set<ReducedWord, ReducedWordHash> seen{ReducedWord(rank)};
  std::vector<ReducedWord> frontier{ReducedWord(rank)};
  for (std::size_t d = 0; d < max_factors; ++d) {
    std::vector<ReducedWord> next;
    for (const auto& w : frontier)
      for (const auto& g : generators) {
        ReducedWord p = word_mul(w, g);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  std::vector<ReducedWord> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nctoric
