#pragma once

// Infinite-word algorithms: Buchi operations, the closure automaton of an
// wB automaton, embeddings of Buchi automata as wB/wS automata, emptiness
// and membership of ultimately periodic words, and the construction of
// omega-regular separators.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegasep/automaton.hpp"
#include "omegasep/monoid.hpp"
#include "omegasep/reduction.hpp"

namespace omegasep {

// ---------------------------------------------------------------- Buchi

bool buchi_is_empty(const BuchiAutomaton& b);

/// An accepted ultimately periodic word, if the language is non-empty.
std::optional<UPWord> buchi_lasso(const BuchiAutomaton& b);

bool buchi_up_membership(const BuchiAutomaton& b, const UPWord& u);

/// Disjoint union. Acceptance set i of the result is the union of the i-th
/// sets of both sides; a side with fewer sets contributes all its states.
BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Synchronized product; acceptance sets of both sides are kept.
BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Equivalent automaton with a single acceptance set.
BuchiAutomaton degeneralize(const BuchiAutomaton& b);

/// Keeps states that are reachable and can reach an accepting cycle.
BuchiAutomaton buchi_trim(const BuchiAutomaton& b);

/// The automaton accepting no word.
BuchiAutomaton buchi_empty(const Alphabet& alphabet);

// ------------------------------------------------------- counter automata

/// Least omega-regular superset of L(a) for an wB automaton a: counters are
/// dropped and every counter must be reset infinitely often. States are
/// pairs (q, R) where R is the set of counters reset while moving into q.
BuchiAutomaton closure_automaton(const CounterAutomaton& a);

/// wB or wS automaton with the language of `b`.
CounterAutomaton buchi_to_omegaT(const BuchiAutomaton& b, Kind kind);

/// Synchronized product of two automata of the same omega kind.
CounterAutomaton intersect_omegaT(const CounterAutomaton& a1, const CounterAutomaton& a2);

/// Emptiness of an wB or wS automaton. wB goes through the closure
/// automaton; wS through the effect summary (a reachable loop whose
/// iteration resets every counter with values tending to infinity).
bool omega_is_empty(const CounterAutomaton& a);

/// Emptiness decided through linked pairs of the transition monoid and the
/// reduction languages M_t. Exponential; meant for cross-checks.
bool omega_is_empty_by_types(const CounterAutomaton& a);

enum class MembershipRoute { Reduction, SafetyProduct, Closure };

/// Membership of x * y^omega. The default route uses the canonical
/// decomposition and the reduction languages; the safety-product route
/// decides emptiness of the product with the single-word automaton; the
/// closure route (wB only) tests the closure automaton.
bool up_membership(const CounterAutomaton& a, const UPWord& u, MembershipRoute route = MembershipRoute::Reduction);
bool up_membership(const CounterAutomaton& a, const TransitionMonoid& m, const UPWord& u);

// -------------------------------------------------------------- separator

/// Buchi automaton for the words that admit a decomposition w_0 w_1 ... with
/// h1/h2-images (s1, s2) for w_0 and (e1, e2) for every later block, such
/// that from some block N on every concatenation w_i ... w_{j-1} with
/// N <= i < j lies in L(r). Blocks are non-empty.
///
/// "Every grouping lies in R from some point on" is equivalent to the
/// condition above: if some run of bad intervals [i, j) existed beyond
/// every N, a grouping could be formed greedily whose blocks contain
/// infinitely many of them, so the grouping-based definition would fail;
/// the converse is immediate since each grouping block is such an interval.
BuchiAutomaton build_S_t1t2(const LinkedPair& t1, const LinkedPair& t2, const TransitionMonoid& m1,
                            const TransitionMonoid& m2, const Nfa& r);

struct CertificatePair {
  LinkedPair t1;
  LinkedPair t2;
  Word w_s;
  Word w_e;
  Nfa r;                  // profinite separator (minimal DFA)
  std::uint64_t n0 = 0;   // S case only
  int parts1 = 0;         // number of non-degenerate parts of M_t1
  int parts2 = 0;
  int component_states = 0;
};

struct SeparatorCertificate {
  Kind kind = Kind::OmegaB;
  std::vector<CertificatePair> pairs;
  int coherent_pairs = 0;  // including pairs skipped because M_t1 is empty
  std::string input_hash;
  std::string separator_hash;
};

struct OmegaSeparator {
  BuchiAutomaton sep;
  SeparatorCertificate certificate;
};

/// 64-bit FNV-1a hash rendered as 16 hex digits.
std::string stable_hash(std::string_view text);
/// Hash of two inputs as recorded in certificates.
std::string input_hash(const CounterAutomaton& a1, const CounterAutomaton& a2);

/// Omega-regular language containing L(a1) and disjoint from L(a2). Throws
/// NotDisjoint when the languages intersect.
OmegaSeparator separator_omega(const CounterAutomaton& a1, const CounterAutomaton& a2);

/// For wB inputs the closure automaton of a1 already separates.
BuchiAutomaton separator_omega_direct(const CounterAutomaton& a1, const CounterAutomaton& a2);

/// Throws NotDisjoint (with a witness when one is found on a small grid of
/// ultimately periodic words) unless L(a1) and L(a2) are disjoint.
void require_omega_disjoint(const CounterAutomaton& a1, const CounterAutomaton& a2, const char* context);

}  // namespace omegasep
