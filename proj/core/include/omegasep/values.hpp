#pragma once

// Finite-word semantics of B- and S-automata and their cutoff languages.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "omegasep/automaton.hpp"

namespace omegasep {

/// A natural number or infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtNat infinity() { return ExtNat(std::numeric_limits<std::uint64_t>::max()); }

  constexpr bool is_infinite() const { return v_ == std::numeric_limits<std::uint64_t>::max(); }
  constexpr std::uint64_t value() const { return v_; }

  friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(v_); }

 private:
  std::uint64_t v_ = 0;
};

/// Minimum over accepting runs of the largest reset value. Infinity when no
/// run accepts; 0 for an accepting run without resets.
ExtNat value_B(const CounterAutomaton& a, const Word& w);

/// Maximum over accepting runs of the smallest reset value. 0 when no run
/// accepts; infinity for an accepting run without resets.
ExtNat value_S(const CounterAutomaton& a, const Word& w);

/// Dispatches on the automaton kind (B or S).
ExtNat value_of(const CounterAutomaton& a, const Word& w);

/// NFA for {w : value_B(a, w) <= n}.
Nfa cutoff_B(const CounterAutomaton& a, std::uint64_t n);

/// NFA for {w : value_S(a, w) > n}.
Nfa cutoff_S(const CounterAutomaton& a, std::uint64_t n);

/// Values of every word of length at most `max_len`, obtained by walking all
/// runs one by one. Meant as a slow reference. Throws SizeGuardExceeded once
/// more than `budget` run steps have been explored.
std::map<Word, ExtNat> enumerate_values(const CounterAutomaton& a, int max_len,
                                        std::uint64_t budget = 50'000'000);

/// Every word over the alphabet of length at most `max_len`, in length-lex order.
std::vector<Word> all_words(const Alphabet& alphabet, int max_len);

}  // namespace omegasep
