#pragma once

// Languages of profinite words given by B- and S-automata:
//   B:  union over n of closure(L(A <= n))
//   S:  intersection over n of closure(L(A > n))
// Profinite-regular languages are closures of regular languages and are
// represented by NFAs throughout.

#include <cstdint>

#include "omegasep/automaton.hpp"
#include "omegasep/effects.hpp"

namespace omegasep {

/// Restriction of a B- or S-language to closure(L(n)). The product keeps the
/// counters of `t`; silent moves of either side advance that side only.
CounterAutomaton restrict_profinite(const CounterAutomaton& t, const Nfa& n);

/// Synchronized product of two counter automata with counters "1.x" and
/// "2.x". Silent moves advance one side at a time. The kind is taken from
/// `t1`; finals are kept when both sides have them.
CounterAutomaton counter_product(const CounterAutomaton& t1, const CounterAutomaton& t2);

/// Product of two B- or S-automata of the same kind. Under max (B) or min
/// (S) over counters the product denotes the intersection.
CounterAutomaton intersect_T(const CounterAutomaton& t1, const CounterAutomaton& t2);

/// B-language emptiness: the underlying NFA is empty.
bool is_empty_B(const CounterAutomaton& t);

/// S-language emptiness, decided on the label-free effect summary: the
/// language is non-empty iff values are unbounded.
bool is_empty_S(const CounterAutomaton& t);

/// S-language emptiness decided on the matrix closure instead. Much slower;
/// used to cross-check is_empty_S.
bool is_empty_S_by_closure(const CounterAutomaton& t, size_t guard = 20000);

/// Dispatches on kind B or S.
bool is_empty_T(const CounterAutomaton& t);

bool is_disjoint_T(const CounterAutomaton& t1, const CounterAutomaton& t2);

/// Returns the counter-free NFA of `m1`. Throws NotDisjoint with a finite
/// witness word when the languages intersect.
Nfa separator_B(const CounterAutomaton& m1, const CounterAutomaton& m2);

struct SeparatorS {
  Nfa nfa;
  std::uint64_t n0 = 0;
};

/// Searches the least n0 such that m1 restricted to closure(L(m2 > n0)) is
/// empty and returns the complement of L(m2 > n0).
SeparatorS separator_S(const CounterAutomaton& m1, const CounterAutomaton& m2, std::uint64_t ceiling = 64);

}  // namespace omegasep
