#pragma once

// Regular algebra over finite-word NFAs. Under the closure map these
// operations are also the Boolean algebra of profinite-regular languages, so
// every closure-level claim in the library is discharged here.

#include <optional>

#include "omegasep/automaton.hpp"

namespace omegasep {

inline constexpr size_t kDefaultSubsetGuard = size_t{1} << 16;

/// Set of states reachable from `from` through silent moves (sorted).
std::vector<StateId> epsilon_closure(const Nfa& n, const std::vector<StateId>& from);

/// Subset construction. The result has one initial state, no silent moves,
/// and (when `complete`) a transition for every state and letter.
Nfa determinize(const Nfa& n, bool complete = false, size_t guard = kDefaultSubsetGuard);

bool is_deterministic(const Nfa& n);

/// Minimal complete DFA of L(n).
Nfa minimize(const Nfa& n, size_t guard = kDefaultSubsetGuard);

/// Keeps states that are reachable from an initial state and co-reachable to
/// a final state.
Nfa trim(const Nfa& n);

Nfa nfa_intersect(const Nfa& a, const Nfa& b);
Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_complement(const Nfa& n, size_t guard = kDefaultSubsetGuard);
bool nfa_is_empty(const Nfa& n);
bool nfa_member(const Nfa& n, const Word& w);
bool nfa_equivalent(const Nfa& a, const Nfa& b);
bool nfa_subset(const Nfa& a, const Nfa& b);

/// A shortest word of L(n), if any.
std::optional<Word> nfa_shortest_word(const Nfa& n);

Nfa nfa_empty(const Alphabet& alphabet);
Nfa nfa_universal(const Alphabet& alphabet);
/// {w}
Nfa nfa_word(const Alphabet& alphabet, const Word& w);
/// w^+ for non-empty w.
Nfa nfa_word_plus(const Alphabet& alphabet, const Word& w);
/// Words over the given letters only (letters^*).
Nfa nfa_letters_star(const Alphabet& alphabet, const std::vector<SymbolId>& letters);
Nfa nfa_letters_plus(const Alphabet& alphabet, const std::vector<SymbolId>& letters);

}  // namespace omegasep
