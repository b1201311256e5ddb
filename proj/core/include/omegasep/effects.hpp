#pragma once

// Counter effect abstraction used to decide S- and wS-emptiness.
//
// A path family is summarized per counter by one of
//   NoReset(i)      the counter is never reset; i counts increments,
//   Reset(p, m, q)  p increments before the first reset, q after the last,
//                   m = large iff every value between two inner resets is
//                   pumped.
// Counts are classified as 0, 1 (positive but bounded) or w (pumped). Both
// products and stabilization are monotone in the order 0 < 1 < w,
// small < large, so sets of effects may be kept as antichains of maximal
// elements.

#include <cstdint>
#include <string>
#include <vector>

#include "omegasep/automaton.hpp"

namespace omegasep {

namespace effect {

using Code = std::uint8_t;

inline constexpr int kZero = 0;
inline constexpr int kOne = 1;
inline constexpr int kOmega = 2;

constexpr Code no_reset(int i) { return static_cast<Code>(i); }
constexpr Code reset(int p, bool large, int q) { return static_cast<Code>(3 + p * 6 + (large ? 3 : 0) + q); }
constexpr bool is_reset(Code c) { return c >= 3; }
constexpr int increments(Code c) { return c; }  // NoReset only
constexpr int head(Code c) { return (c - 3) / 6; }
constexpr bool large(Code c) { return ((c - 3) % 6) >= 3; }
constexpr int tail(Code c) { return (c - 3) % 3; }

Code compose(Code a, Code b);
Code stabilize(Code a);
/// Partial order: same constructor and componentwise smaller or equal.
bool leq(Code a, Code b);
Code of_op(CounterOp op);
std::string to_string(Code c);

}  // namespace effect

/// One effect code per counter, packed five bits each.
struct EffectVector {
  static constexpr int kMaxCounters = 12;
  std::uint64_t bits = 0;

  effect::Code at(int c) const { return static_cast<effect::Code>((bits >> (5 * c)) & 31U); }
  void set(int c, effect::Code code) {
    bits = (bits & ~(std::uint64_t{31} << (5 * c))) | (std::uint64_t{code} << (5 * c));
  }

  friend bool operator==(EffectVector, EffectVector) = default;
  friend auto operator<=>(EffectVector, EffectVector) = default;
};

EffectVector effect_unit();
EffectVector effect_of(const std::vector<CounterOp>& ops);
EffectVector compose(EffectVector a, EffectVector b, int counters);
EffectVector stabilize(EffectVector a, int counters);
bool leq(EffectVector a, EffectVector b, int counters);
std::string to_string(EffectVector v, int counters);

/// Every counter is either never reset or first reset with a pumped value
/// and all later reset values pumped.
bool finite_good(EffectVector v, int counters);
/// A loop whose infinite iteration resets every counter with values tending
/// to infinity.
bool omega_good(EffectVector v, int counters);

/// Set of maximal effect vectors.
class Antichain {
 public:
  /// Returns true when `v` was not dominated.
  bool insert(EffectVector v, int counters);
  bool insert_all(const Antichain& other, int counters);
  const std::vector<EffectVector>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }

 private:
  std::vector<EffectVector> items_;
};

Antichain product(const Antichain& a, const Antichain& b, int counters);
/// Closure of `a` under product and stabilization, without the unit.
Antichain star_plus(const Antichain& a, int counters);

/// Label-free summary of all paths of a counter automaton.
struct EffectSummary {
  int counters = 0;
  /// Effects of paths from an initial state (including the empty path).
  std::vector<Antichain> reach;
  /// Effects of non-empty loops at each state, closed under product and
  /// stabilization. Empty for states outside cycles or unreachable.
  std::vector<Antichain> loops;
};

EffectSummary summarize_effects(const CounterAutomaton& a, bool with_loops);

/// Matrix of effect sets indexed by (source, target); sets are exact and
/// sorted.
struct EffectMatrix {
  int n = 0;
  std::vector<std::vector<EffectVector>> entries;

  const std::vector<EffectVector>& at(int p, int q) const { return entries[static_cast<size_t>(p * n + q)]; }
  friend bool operator==(const EffectMatrix&, const EffectMatrix&) = default;
  friend auto operator<=>(const EffectMatrix&, const EffectMatrix&) = default;
};

EffectMatrix matrix_product(const EffectMatrix& a, const EffectMatrix& b, int counters);
/// E# for an idempotent matrix E.
EffectMatrix matrix_stabilize(const EffectMatrix& e, int counters);

/// Letter matrices (silent paths folded in on both sides).
std::vector<EffectMatrix> letter_matrices(const CounterAutomaton& a);
/// Matrix of silent-only paths (including the empty path).
EffectMatrix silent_matrix(const CounterAutomaton& a);

/// Least set of matrices containing the letter matrices and closed under
/// product and stabilization of idempotents.
std::vector<EffectMatrix> stabilization_closure(const CounterAutomaton& a, size_t guard = 20000);

}  // namespace omegasep
