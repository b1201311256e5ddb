#pragma once

// Fixture catalog, random instance generators, independent oracles and the
// separation verification report.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "omegasep/automaton.hpp"
#include "omegasep/io.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/values.hpp"

namespace omegasep {

// ---------------------------------------------------------------- builder

struct EdgeSpec {
  std::string from;
  std::string label;             // "" for a silent move
  std::vector<std::string> ops;  // one of "nil", "inc", "reset" per counter
  std::string to;
};

CounterAutomaton make_counter_automaton(Kind kind, const std::vector<std::string>& alphabet,
                                        const std::vector<std::string>& states,
                                        const std::vector<std::string>& initial,
                                        const std::vector<std::string>& counters, const std::vector<EdgeSpec>& edges,
                                        const std::optional<std::vector<std::string>>& finals = std::nullopt);

BuchiAutomaton make_buchi(const std::vector<std::string>& alphabet, const std::vector<std::string>& states,
                          const std::vector<std::string>& initial,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
                          const std::vector<std::vector<std::string>>& acceptance);

// --------------------------------------------------------------- fixtures

struct Fixture {
  std::string name;
  CounterAutomaton automaton;
  std::string provenance;
};

namespace fixtures {

/// Two states q_I, q_M over {a, b}: the automaton guesses a-blocks to
/// measure. Read as wB it accepts a^n0 b a^n1 b ... with liminf n_i finite;
/// read as wS, with limsup n_i infinite.
CounterAutomaton fig1(Kind kind = Kind::OmegaB);
/// S-automaton whose value is the number of letters a.
CounterAutomaton fig2();
/// One final state, a: inc, b: reset.
CounterAutomaton cnt1();
/// S-automata counting a (resp. b) that only read a (resp. b).
CounterAutomaton a1only();
CounterAutomaton b1only();
/// S-automaton whose values never exceed 1.
CounterAutomaton single_increment();
/// S-automaton without any final state.
CounterAutomaton no_accept_S();
/// Counterless automaton of the given omega kind accepting a^omega only.
CounterAutomaton a_omega(Kind kind = Kind::OmegaB);

/// All named fixtures.
std::vector<Fixture> all();

/// Disjoint pairs of B-automata (resp. S-automata) with their names; the
/// S pairs carry the expected threshold n0.
struct ProfinitePair {
  std::string name;
  CounterAutomaton m1;
  CounterAutomaton m2;
  std::optional<std::uint64_t> expected_n0;
};
std::vector<ProfinitePair> b_pairs();
std::vector<ProfinitePair> s_pairs();

struct OmegaPair {
  std::string name;
  CounterAutomaton a1;
  CounterAutomaton a2;
};
/// Disjoint pairs of wB (resp. wS) automata.
std::vector<OmegaPair> omega_pairs(Kind kind);

/// Named wB automata used for closure checks.
std::vector<Fixture> omega_b_catalog();

/// L = "infinitely many b" and its complement, both as wB automata, and a
/// hand-written deterministic Buchi automaton for L.
struct ComplementaryPair {
  CounterAutomaton l;
  CounterAutomaton lc;
  BuchiAutomaton reference;
};
ComplementaryPair complementary_pair();

}  // namespace fixtures

// ----------------------------------------------------------------- random

struct RandomOptions {
  int max_states = 4;
  int max_counters = 2;
  double density = 0.5;
  double epsilon_density = 0.1;
  int alphabet_size = 2;
  /// Require at least one counter (useful for omega kinds).
  bool at_least_one_counter = false;
};

CounterAutomaton random_counter_automaton(std::mt19937_64& rng, Kind kind, const RandomOptions& opts = {});
BuchiAutomaton random_buchi(std::mt19937_64& rng, int max_states = 4, double density = 0.4, int alphabet_size = 2);
Alphabet default_alphabet(int size = 2);

// ---------------------------------------------------------------- oracles

/// Every (x, y) with |x| <= px and 1 <= |y| <= py, in length-lex order.
std::vector<UPWord> up_grid(const Alphabet& alphabet, int px, int py);

/// Grid words accepted by `a`. Throws SizeGuardExceeded when the grid has
/// more than `budget` words.
std::vector<UPWord> sample_up_members(const CounterAutomaton& a, int px, int py,
                                      MembershipRoute route = MembershipRoute::SafetyProduct,
                                      size_t budget = 100000);

/// Independent membership oracle for wB automata: in the product with the
/// single-word automaton, look for a reachable cycle that resets every
/// counter.
bool wB_lasso_oracle(const CounterAutomaton& a, const UPWord& u);

/// For n = 0, 1, ..., max_n: the length of a shortest word with value above
/// n, stopping at the first n without such a word.
std::vector<std::pair<std::uint64_t, std::size_t>> growth_probe(const CounterAutomaton& a, std::uint64_t max_n = 3);

/// Largest finite value over words of length at most `max_len` (infinite
/// values are reported as infinity).
ExtNat max_value_up_to(const CounterAutomaton& a, int max_len);

struct GrowthVerdict {
  bool consistent = true;
  bool is_empty = true;
  std::string detail;
};

/// Compares is_empty_S with the growth oracle. The language must be
/// non-empty exactly when words with value above n exist for n = 0..3; a
/// non-empty language must show them within n*|Q|*(|counters|+1)+|Q|
/// letters, and an empty one must reach the same maximum value on words of
/// length 6 and 8.
GrowthVerdict check_growth_consistency(const CounterAutomaton& a);

// ----------------------------------------------------------- verification

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string counterexample;
  double seconds = 0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  bool passed() const;
  Json to_json(bool with_times = true) const;
};

struct VerifyOptions {
  int px = 3;
  int py = 4;
  std::uint64_t seed = 0;
};

/// Checks L(a2) and sep are disjoint exactly, L(a1) is contained in sep on
/// the grid, and replays the certificate when one is supplied.
VerificationReport verify_separation(const CounterAutomaton& a1, const CounterAutomaton& a2,
                                     const BuchiAutomaton& sep, const SeparatorCertificate* certificate,
                                     const VerifyOptions& opts = {});

Json certificate_to_json(const SeparatorCertificate& cert, const CounterAutomaton& a1, const CounterAutomaton& a2);
SeparatorCertificate certificate_from_json(const Json& doc, const CounterAutomaton& a1, const CounterAutomaton& a2);

}  // namespace omegasep
