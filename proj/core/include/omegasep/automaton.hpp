#pragma once

// Data model shared by every construction: alphabets, words, counter
// automata (B, S, wB, wS), plain NFAs and generalized Buchi automata.
//
// States, symbols and counters are dense integer ids with a parallel table of
// display names. Labels use kEpsilon for silent moves. All types are plain
// values; constructions never mutate their inputs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegasep/error.hpp"

namespace omegasep {

using StateId = int;
using SymbolId = int;
using CounterId = int;

inline constexpr SymbolId kEpsilon = -1;

using Word = std::vector<SymbolId>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& name(SymbolId a) const { return symbols_.at(static_cast<size_t>(a)); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  /// Index of `symbol`; throws ForeignSymbol when absent.
  SymbolId index_of(std::string_view symbol) const;
  std::optional<SymbolId> find(std::string_view symbol) const;

  /// Parses a word. When every symbol is one character long the text is read
  /// character by character ("aab"); otherwise symbols are whitespace
  /// separated ("foo bar").
  Word parse(std::string_view text) const;
  std::string render(const Word& w) const;
  std::vector<std::string> names_of(const Word& w) const;
  Word from_names(const std::vector<std::string>& names) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

enum class CounterOp : std::uint8_t { Nil, Inc, Reset };

/// B and S read finite words and carry final states; OmegaB and OmegaS read
/// infinite words.
enum class Kind : std::uint8_t { B, S, OmegaB, OmegaS };

std::string_view kind_tag(Kind k);
bool is_omega(Kind k);

struct CounterTransition {
  StateId src = 0;
  SymbolId label = kEpsilon;
  std::vector<CounterOp> ops;
  StateId dst = 0;

  friend bool operator==(const CounterTransition&, const CounterTransition&) = default;
};

struct CounterAutomaton {
  Kind kind = Kind::B;
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<StateId> initial;
  std::vector<std::string> counters;
  std::vector<CounterTransition> transitions;
  /// Present exactly for kinds B and S.
  std::optional<std::vector<StateId>> finals;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_counters() const { return static_cast<int>(counters.size()); }
  bool is_final(StateId q) const;
  bool has_epsilon() const;

  friend bool operator==(const CounterAutomaton&, const CounterAutomaton&) = default;
};

struct NfaTransition {
  StateId src = 0;
  SymbolId label = kEpsilon;
  StateId dst = 0;

  friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

struct Nfa {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<StateId> initial;
  std::vector<StateId> finals;
  std::vector<NfaTransition> transitions;

  int num_states() const { return static_cast<int>(states.size()); }

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

/// Generalized Buchi automaton over letters (no silent moves). A run is
/// accepting when it visits every set of `acceptance` infinitely often; the
/// single set [all states] is a safety condition.
struct BuchiAutomaton {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<StateId> initial;
  std::vector<NfaTransition> transitions;
  std::vector<std::vector<StateId>> acceptance;

  int num_states() const { return static_cast<int>(states.size()); }

  friend bool operator==(const BuchiAutomaton&, const BuchiAutomaton&) = default;
};

/// Ultimately periodic word prefix * period^omega.
struct UPWord {
  Word prefix;
  Word period;

  /// Letter at position i of the infinite word.
  SymbolId at(size_t i) const;

  friend bool operator==(const UPWord&, const UPWord&) = default;
};

UPWord make_up_word(const Alphabet& alphabet, std::string_view prefix, std::string_view period);

struct Diagnostic {
  std::string code;
  std::string message;
};

std::vector<Diagnostic> validate(const CounterAutomaton& a);
std::vector<Diagnostic> validate(const Nfa& a);
std::vector<Diagnostic> validate(const BuchiAutomaton& a);

/// Throws InvalidArgument listing the diagnostics when `a` is malformed.
template <typename Automaton>
void require_valid(const Automaton& a) {
  auto diags = validate(a);
  if (diags.empty()) return;
  std::string msg = "malformed automaton:";
  for (const auto& d : diags) msg += " [" + d.code + "] " + d.message + ";";
  throw InvalidArgument(msg);
}

/// Deterministic complete safety automaton accepting exactly {u}.
BuchiAutomaton up_safety(const UPWord& u, const Alphabet& alphabet);

/// Synchronized product of `a` with a deterministic safety automaton `d`.
/// Silent moves of `a` advance `a` only; states of `d` outside its first
/// acceptance set are dropped.
CounterAutomaton product_safety(const CounterAutomaton& a, const BuchiAutomaton& d);

/// Removes silent moves by composing each maximal run of silent moves with
/// the following letter (or, for final states, with the end of the word).
/// Limit behaviour is preserved; exact finite-word values may change up to a
/// linear factor. The empty word stays accepted only when a reset-free
/// silent path leads from an initial to a final state.
CounterAutomaton eliminate_epsilon(const CounterAutomaton& a);

/// Counter automaton with its counters, counter operations and kind removed.
Nfa strip(const CounterAutomaton& a);

/// Finite run: indices into `a.transitions`, chained on states.
struct Run {
  std::vector<int> transitions;
};

struct ResetEvent {
  CounterId counter;
  int position;  // index of the resetting transition within the run
  int value;
};

/// Checks chaining and returns every reset with the value held just before it.
std::vector<ResetEvent> run_resets(const CounterAutomaton& a, const Run& run);
Word run_word(const CounterAutomaton& a, const Run& run);

/// Builds a Buchi automaton/NFA/counter automaton keeping only states in
/// `keep` (renumbered in increasing order).
Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep);
BuchiAutomaton restrict_states(const BuchiAutomaton& a, const std::vector<bool>& keep);
CounterAutomaton restrict_states(const CounterAutomaton& a, const std::vector<bool>& keep);

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context);

}  // namespace omegasep
