#pragma once

// Reduction of an wB/wS automaton and a linked pair t = (s, e) of its
// transition monoid to a B/S-language of profinite words M_t, given as a
// union of parts. Each part simulates loops q ->* q of the automaton that
// reset every counter and read a word of K_e = h^-1(e).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omegasep/automaton.hpp"
#include "omegasep/monoid.hpp"

namespace omegasep {

enum class EndType : std::uint8_t { Left, Right };  // "<-" and "->"

std::string_view to_string(EndType t);

/// End-type of counter `c` at cut `k` of a finite run, where `k` indexes the
/// boundary before run transition k (0 = start). V_L counts increments of c
/// since the last reset before the cut and V_R increments up to the first
/// reset after it; a side without a reset counts 0. Right iff V_L < V_R.
EndType end_type(const CounterAutomaton& a, const Run& run, CounterId c, int k);

/// Per-counter end-types; bit c set means Left.
using TauVector = std::uint32_t;

std::string tau_to_string(TauVector tau, int counters);

struct ReductionOptions {
  /// Only build product states reachable from the initial state. When false
  /// the full state space {*} + Q x Q_e x {0,1}^counters is materialized.
  bool reachable_only = true;
};

/// B-automaton A_q for an wB automaton. Degenerate cases yield an automaton
/// with an empty underlying language.
CounterAutomaton build_A_q(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q,
                           const ReductionOptions& opts = {});

/// S-automaton A_{q,tau} for an wS automaton.
CounterAutomaton build_A_q_tau(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q,
                               TauVector tau, const ReductionOptions& opts = {});

/// True when no initial state reaches q under s, or (q, q) is not in e.
bool is_degenerate(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q);

struct MtPart {
  StateId q = 0;
  TauVector tau = 0;  // S case only
  CounterAutomaton automaton;
};

struct MtLanguage {
  Kind kind = Kind::B;  // B or S
  LinkedPair t;
  std::vector<MtPart> parts;
};

/// All non-degenerate parts for the linked pair t.
MtLanguage build_M_t(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t);

/// Single automaton denoting the union of the parts (disjoint union with
/// shared counters). With no parts it is the empty-language automaton.
CounterAutomaton mt_union(const MtLanguage& mt, const CounterAutomaton& source);

/// Deterministic automaton for K_e = h^-1(e): states are monoid elements.
Nfa k_e_automaton(const TransitionMonoid& m, ElementId e);

/// Canonical automaton of the given kind with no accepting run.
CounterAutomaton empty_T(Kind kind, const Alphabet& alphabet, const std::vector<std::string>& counters);

}  // namespace omegasep
