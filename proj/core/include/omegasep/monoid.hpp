#pragma once

// Transition monoids of automata as boolean relation monoids, linked pairs,
// coherent pairs across two monoids, and canonical decompositions of
// ultimately periodic words.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "omegasep/automaton.hpp"

namespace omegasep {

/// Boolean relation on at most 64 states, one bit row per source state.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n) : n_(n), rows_(static_cast<size_t>(n), 0) {}

  static Relation identity(int n);

  int size() const { return n_; }
  bool get(int p, int q) const { return (rows_[static_cast<size_t>(p)] >> q) & 1U; }
  void set(int p, int q) { rows_[static_cast<size_t>(p)] |= std::uint64_t{1} << q; }
  std::uint64_t row(int p) const { return rows_[static_cast<size_t>(p)]; }
  bool empty() const;

  /// Relational composition: first this, then `other`.
  Relation operator*(const Relation& other) const;
  Relation operator|(const Relation& other) const;

  std::vector<std::pair<int, int>> pairs() const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;

  size_t hash() const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct RelationHash {
  size_t operator()(const Relation& r) const { return r.hash(); }
};

using ElementId = int;

/// Monoid generated by the letter relations of an automaton. Element 0 is
/// the neutral element (identity relation); every element has a shortest
/// witness word, and `realized_nonempty` marks elements in the image of
/// non-empty words.
class TransitionMonoid {
 public:
  static constexpr size_t kDefaultGuard = 4096;

  /// Letter images fold silent moves in: h(a) = E* a E*.
  static TransitionMonoid of(const CounterAutomaton& a, size_t guard = kDefaultGuard);
  static TransitionMonoid of(const Nfa& a, size_t guard = kDefaultGuard);
  static TransitionMonoid of(const BuchiAutomaton& a, size_t guard = kDefaultGuard);
  /// Generic constructor from the per-letter relations (and the relation of
  /// silent moves, possibly empty).
  static TransitionMonoid from_letters(const Alphabet& alphabet, int num_states,
                                       const std::vector<Relation>& letters, const Relation& silent,
                                       size_t guard = kDefaultGuard);

  size_t size() const { return elements_.size(); }
  int num_states() const { return num_states_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const Relation& element(ElementId id) const { return elements_.at(static_cast<size_t>(id)); }
  const std::vector<Relation>& elements() const { return elements_; }
  ElementId neutral() const { return 0; }
  ElementId letter(SymbolId a) const { return letters_.at(static_cast<size_t>(a)); }
  const Word& witness(ElementId id) const { return witness_.at(static_cast<size_t>(id)); }
  /// Shortest non-empty word mapping to the element, when one exists.
  const std::optional<Word>& nonempty_witness(ElementId id) const { return nonempty_witness_.at(static_cast<size_t>(id)); }
  bool realized_nonempty(ElementId id) const { return nonempty_witness(id).has_value(); }
  /// The silent-move closure E*, used to lift letter images.
  const Relation& silent_closure() const { return silent_star_; }

  ElementId multiply(ElementId x, ElementId y) const;
  std::optional<ElementId> find(const Relation& r) const;
  ElementId image(const Word& w) const;
  bool is_idempotent(ElementId x) const { return multiply(x, x) == x; }

  /// Product table, computed on demand (size^2 entries).
  const std::vector<ElementId>& table() const;

 private:
  Alphabet alphabet_;
  int num_states_ = 0;
  Relation silent_star_;
  std::vector<Relation> elements_;
  std::unordered_map<Relation, ElementId, RelationHash> index_;
  std::vector<ElementId> letters_;
  std::vector<Word> witness_;
  std::vector<std::optional<Word>> nonempty_witness_;
  mutable std::vector<ElementId> table_;
};

/// h(w) as a relation.
ElementId h_image(const TransitionMonoid& m, const Word& w);

struct LinkedPair {
  ElementId s = 0;
  ElementId e = 0;
  friend bool operator==(const LinkedPair&, const LinkedPair&) = default;
  friend auto operator<=>(const LinkedPair&, const LinkedPair&) = default;
};

bool is_linked_pair(const TransitionMonoid& m, const LinkedPair& t);

/// All (s, e) with s*e = s, e*e = e and both realized by non-empty words.
std::vector<LinkedPair> linked_pairs(const TransitionMonoid& m);

/// Least k >= 1 such that x^k is idempotent.
int idempotent_exponent(const TransitionMonoid& m, ElementId x);
ElementId power(const TransitionMonoid& m, ElementId x, int k);

struct CoherentWitness {
  LinkedPair t1;
  LinkedPair t2;
  Word w_s;
  Word w_e;
};

/// Pairs of linked pairs realized simultaneously by common non-empty words.
std::vector<CoherentWitness> coherent_pairs(const TransitionMonoid& m1, const TransitionMonoid& m2,
                                            size_t guard = size_t{1} << 20);

struct UPDecomposition {
  LinkedPair t;
  int j = 0;  // the first block is x * y^j
  int m = 0;  // every later block is y^m
};

/// Canonical decomposition x*y^m, y^m, y^m, ... with y^m idempotent under h.
UPDecomposition up_decomposition(const UPWord& u, const TransitionMonoid& m);

}  // namespace omegasep
