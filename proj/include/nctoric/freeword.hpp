#pragma once

// The free group on z_1..z_n as a monoid of reduced words, its
// abelianization, and membership in finitely generated submonoids.

#include "nctoric/lattice.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nctoric {

/// Letters are signed indices: +i is z_i, -i is z_i^{-1}.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(int rank) : rank_(rank) {}
  /// Freely reduces `letters`; throws InvalidArgument on 0 or |letter| > rank.
  ReducedWord(int rank, const std::vector<int>& letters);

  static ReducedWord letter(int rank, int signed_index) { return {rank, {signed_index}}; }

  int rank() const { return rank_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) { return !(a == b); }
  /// Shortlex; used as the canonical order of word bases.
  friend bool operator<(const ReducedWord& a, const ReducedWord& b);

 private:
  int rank_ = 0;
  std::vector<int> letters_;
};

struct ReducedWordHash {
  std::size_t operator()(const ReducedWord& w) const;
};

ReducedWord word_mul(const ReducedWord& a, const ReducedWord& b);
ReducedWord word_inv(const ReducedWord& a);
ReducedWord word_pow(const ReducedWord& a, long long k);
LatticeVector abelianize(const ReducedWord& a);
/// z_1^{a_1} ... z_n^{a_n}
ReducedWord canonical_lift(const LatticeVector& v);

/// "z1 z2^-1 z1^3"; "e", "1" and "" denote the identity.
ReducedWord parse_word(std::string_view text, int rank);
std::string to_string(const ReducedWord& w);

/// Finitely generated submonoid with a compiled membership acceptor.
class SubmonoidFG {
 public:
  SubmonoidFG() = default;
  SubmonoidFG(int rank, std::vector<ReducedWord> generators);

  int rank() const { return rank_; }
  const std::vector<ReducedWord>& generators() const { return generators_; }

  bool accepts(const ReducedWord& w) const;
  std::size_t state_count() const;

 private:
  struct Automaton;
  int rank_ = 0;
  std::vector<ReducedWord> generators_;
  std::shared_ptr<const Automaton> automaton_;
};

SubmonoidFG compile_submonoid(int rank, std::vector<ReducedWord> generators);

/// Generator indices whose product is w, searched among products of at most
/// max_factors generators. Empty sequence for w = e.
std::optional<std::vector<std::size_t>> factorize(const SubmonoidFG& s, const ReducedWord& w,
                                                  std::size_t max_factors);

bool member(const SubmonoidFG& s, const ReducedWord& w);
bool is_unit_in(const SubmonoidFG& s, const ReducedWord& w);

/// Mutual generator containment.
bool same_submonoid(const SubmonoidFG& a, const SubmonoidFG& b);
bool contains_submonoid(const SubmonoidFG& big, const SubmonoidFG& small);

/// Reduced forms of all products of at most `max_factors` generators; the
/// exhaustive oracle the automaton is tested against.
std::vector<ReducedWord> enumerate_products(const std::vector<ReducedWord>& generators,
                                            std::size_t max_factors);

}  // namespace nctoric
