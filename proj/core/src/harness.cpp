#include "omegasep/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "omegasep/monoid.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/reduction.hpp"

namespace omegasep {

namespace {

StateId state_index(const std::vector<std::string>& states, const std::string& name) {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw InvalidArgument("unknown state '" + name + "'");
  return static_cast<StateId>(it - states.begin());
}

CounterOp parse_op(const std::string& op) {
  if (op == "nil") return CounterOp::Nil;
  if (op == "inc") return CounterOp::Inc;
  if (op == "reset") return CounterOp::Reset;
  throw InvalidArgument("unknown counter operation '" + op + "'");
}

}  // namespace

CounterAutomaton make_counter_automaton(Kind kind, const std::vector<std::string>& alphabet,
                                        const std::vector<std::string>& states,
                                        const std::vector<std::string>& initial,
                                        const std::vector<std::string>& counters, const std::vector<EdgeSpec>& edges,
                                        const std::optional<std::vector<std::string>>& finals) {
  CounterAutomaton a;
  a.kind = kind;
  a.alphabet = Alphabet(alphabet);
  a.states = states;
  a.counters = counters;
  for (const auto& s : initial) a.initial.push_back(state_index(states, s));
  for (const auto& e : edges) {
    CounterTransition t;
    t.src = state_index(states, e.from);
    t.dst = state_index(states, e.to);
    t.label = e.label.empty() ? kEpsilon : a.alphabet.index_of(e.label);
    if (e.ops.size() != counters.size()) throw InvalidArgument("edge operation count differs from counter count");
    for (const auto& op : e.ops) t.ops.push_back(parse_op(op));
    a.transitions.push_back(std::move(t));
  }
  if (finals) {
    a.finals.emplace();
    for (const auto& s : *finals) a.finals->push_back(state_index(states, s));
  }
  require_valid(a);
  return a;
}

BuchiAutomaton make_buchi(const std::vector<std::string>& alphabet, const std::vector<std::string>& states,
                          const std::vector<std::string>& initial,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
                          const std::vector<std::vector<std::string>>& acceptance) {
  BuchiAutomaton b;
  b.alphabet = Alphabet(alphabet);
  b.states = states;
  for (const auto& s : initial) b.initial.push_back(state_index(states, s));
  for (const auto& [from, label, to] : edges) {
    b.transitions.push_back({state_index(states, from), label.empty() ? kEpsilon : b.alphabet.index_of(label),
                             state_index(states, to)});
  }
  for (const auto& set : acceptance) {
    std::vector<StateId> ids;
    for (const auto& s : set) ids.push_back(state_index(states, s));
    b.acceptance.push_back(std::move(ids));
  }
  require_valid(b);
  return b;
}

// ---------------------------------------------------------------- fixtures

namespace fixtures {

namespace {

const std::vector<std::string> kAB = {"a", "b"};
using Finals = std::optional<std::vector<std::string>>;

// Finite-word S automaton that increments on `counted`, reads every letter
// and accepts only words with at most `limit` occurrences of `other`.
CounterAutomaton count_with_limit(const std::string& counted, const std::string& other, int limit) {
  std::vector<std::string> states;
  for (int i = 0; i <= limit; ++i) states.push_back("p" + std::to_string(i));
  states.push_back("f");
  std::vector<EdgeSpec> edges;
  for (int i = 0; i <= limit; ++i) {
    const std::string p = states[static_cast<size_t>(i)];
    edges.push_back({p, counted, {"inc"}, p});
    if (i < limit) edges.push_back({p, other, {"nil"}, states[static_cast<size_t>(i + 1)]});
    edges.push_back({p, "", {"reset"}, "f"});
  }
  return make_counter_automaton(Kind::S, kAB, states, {"p0"}, {"c"}, edges, Finals{{"f"}});
}

// Counts occurrences of `counted` over all words.
CounterAutomaton count_letter(Kind kind, const std::string& counted) {
  const std::string other = counted == "a" ? "b" : "a";
  return make_counter_automaton(kind, kAB, {"qI", "qF"}, {"qI"}, {"c"},
                                {{"qI", counted, {"inc"}, "qI"}, {"qI", other, {"nil"}, "qI"}, {"qI", "", {"reset"}, "qF"}},
                                Finals{{"qF"}});
}

// Counterless finite-word automaton built from a DFA-like edge list.
CounterAutomaton counterless(Kind kind, const std::vector<std::string>& states,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
                             const Finals& finals) {
  std::vector<EdgeSpec> specs;
  for (const auto& [from, label, to] : edges) specs.push_back({from, label, {}, to});
  return make_counter_automaton(kind, kAB, states, {states.front()}, {}, specs, finals);
}

CounterAutomaton b_empty() {
  return make_counter_automaton(Kind::B, kAB, {"q"}, {"q"}, {"c"},
                                {{"q", "a", {"inc"}, "q"}, {"q", "b", {"nil"}, "q"}}, Finals{std::vector<std::string>{}});
}

// Words of a*, value = number of a.
CounterAutomaton b_astar() {
  return make_counter_automaton(Kind::B, kAB, {"p", "f"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"}, {"p", "", {"reset"}, "f"}}, Finals{{"f"}});
}

// Words of b+, value = length.
CounterAutomaton b_bplus() {
  return make_counter_automaton(Kind::B, kAB, {"p", "q", "f"}, {"p"}, {"c"},
                                {{"p", "b", {"inc"}, "q"}, {"q", "b", {"inc"}, "q"}, {"q", "", {"reset"}, "f"}},
                                Finals{{"f"}});
}

CounterAutomaton b_starts_with(const std::string& first) {
  return make_counter_automaton(Kind::B, kAB, {"p", "q"}, {"p"}, {"c"},
                                {{"p", first, {"nil"}, "q"}, {"q", "a", {"inc"}, "q"}, {"q", "b", {"reset"}, "q"}},
                                Finals{{"q"}});
}

// Words of even (resp. odd) length; the counter counts a.
CounterAutomaton b_parity(bool even) {
  return make_counter_automaton(Kind::B, kAB, {"e", "o"}, {"e"}, {"c"},
                                {{"e", "a", {"inc"}, "o"},
                                 {"e", "b", {"nil"}, "o"},
                                 {"o", "a", {"inc"}, "e"},
                                 {"o", "b", {"nil"}, "e"}},
                                Finals{{even ? "e" : "o"}});
}

CounterAutomaton b_contains_ab() {
  return make_counter_automaton(Kind::B, kAB, {"p", "q", "r"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"},
                                 {"p", "b", {"reset"}, "p"},
                                 {"p", "a", {"nil"}, "q"},
                                 {"q", "b", {"nil"}, "r"},
                                 {"r", "a", {"inc"}, "r"},
                                 {"r", "b", {"reset"}, "r"}},
                                Finals{{"r"}});
}

CounterAutomaton b_bstar_astar() {
  return make_counter_automaton(Kind::B, kAB, {"p", "q"}, {"p"}, {"c"},
                                {{"p", "b", {"inc"}, "p"}, {"p", "", {"reset"}, "q"}, {"q", "a", {"inc"}, "q"}},
                                Finals{{"p", "q"}});
}

CounterAutomaton b_ends_with(const std::string& last) {
  const std::string other = last == "a" ? "b" : "a";
  return make_counter_automaton(Kind::B, kAB, {"p", "q"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"}, {"p", "b", {"reset"}, "p"}, {"p", last, {"nil"}, "q"}},
                                Finals{{"q"}});
}

CounterAutomaton b_contains_b() {
  return make_counter_automaton(Kind::B, kAB, {"p", "q"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"},
                                 {"p", "b", {"nil"}, "p"},
                                 {"p", "b", {"reset"}, "q"},
                                 {"q", "a", {"inc"}, "q"},
                                 {"q", "b", {"nil"}, "q"}},
                                Finals{{"q"}});
}

// Words of (aa)^*, two counters measuring a and b.
CounterAutomaton b_aa_star() {
  return make_counter_automaton(Kind::B, kAB, {"e", "o"}, {"e"}, {"ca", "cb"},
                                {{"e", "a", {"inc", "nil"}, "o"}, {"o", "a", {"inc", "nil"}, "e"}}, Finals{{"e"}});
}

CounterAutomaton b_odd_a() {
  return make_counter_automaton(Kind::B, kAB, {"e", "o"}, {"e"}, {"c"},
                                {{"e", "a", {"inc"}, "o"},
                                 {"o", "a", {"inc"}, "e"},
                                 {"e", "b", {"reset"}, "e"},
                                 {"o", "b", {"reset"}, "o"}},
                                Finals{{"o"}});
}

// Largest a-block (up to the guess of which block to measure).
CounterAutomaton s_long_a_blocks() {
  return make_counter_automaton(Kind::S, kAB, {"p", "m", "f"}, {"p"}, {"c"},
                                {{"p", "a", {"nil"}, "p"},
                                 {"p", "b", {"nil"}, "p"},
                                 {"p", "", {"nil"}, "m"},
                                 {"m", "a", {"inc"}, "m"},
                                 {"m", "", {"reset"}, "f"},
                                 {"f", "a", {"nil"}, "f"},
                                 {"f", "b", {"nil"}, "f"}},
                                Finals{{"f"}});
}

// min(#a, #b)
CounterAutomaton s_min_ab() {
  return make_counter_automaton(Kind::S, kAB, {"p", "f"}, {"p"}, {"ca", "cb"},
                                {{"p", "a", {"inc", "nil"}, "p"},
                                 {"p", "b", {"nil", "inc"}, "p"},
                                 {"p", "", {"reset", "reset"}, "f"}},
                                Finals{{"f"}});
}

CounterAutomaton at_most_b(int limit, Kind kind = Kind::S) {
  std::vector<std::string> states;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (int i = 0; i <= limit; ++i) states.push_back("z" + std::to_string(i));
  for (int i = 0; i <= limit; ++i) {
    edges.emplace_back(states[static_cast<size_t>(i)], "a", states[static_cast<size_t>(i)]);
    if (i < limit) edges.emplace_back(states[static_cast<size_t>(i)], "b", states[static_cast<size_t>(i + 1)]);
  }
  return counterless(kind, states, edges, states);
}

CounterAutomaton at_most_a(int limit) {
  std::vector<std::string> states;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (int i = 0; i <= limit; ++i) states.push_back("z" + std::to_string(i));
  for (int i = 0; i <= limit; ++i) {
    edges.emplace_back(states[static_cast<size_t>(i)], "b", states[static_cast<size_t>(i)]);
    if (i < limit) edges.emplace_back(states[static_cast<size_t>(i)], "a", states[static_cast<size_t>(i + 1)]);
  }
  return counterless(Kind::S, states, edges, states);
}

CounterAutomaton ab_star(Kind kind) {
  return counterless(kind, {"s0", "s1"}, {{"s0", "a", "s1"}, {"s1", "b", "s0"}}, Finals{{"s0"}});
}

// ------------------------------------------------------------ omega words

CounterAutomaton ab_omega(Kind kind) {
  return counterless(kind, {"s0", "s1"}, {{"s0", "a", "s1"}, {"s1", "b", "s0"}}, std::nullopt);
}

CounterAutomaton starts_with_omega(Kind kind, const std::string& first) {
  return counterless(kind, {"p0", "p1"}, {{"p0", first, "p1"}, {"p1", "a", "p1"}, {"p1", "b", "p1"}}, std::nullopt);
}

// Infinitely many b.
CounterAutomaton inf_b(Kind kind) {
  if (kind == Kind::OmegaB) {
    return make_counter_automaton(kind, kAB, {"p"}, {"p"}, {"c"}, {{"p", "a", {"nil"}, "p"}, {"p", "b", {"reset"}, "p"}});
  }
  return make_counter_automaton(kind, kAB, {"p"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"}, {"p", "b", {"inc"}, "p"}, {"p", "b", {"reset"}, "p"}});
}

// Finitely many b.
CounterAutomaton fin_b(Kind kind) {
  std::vector<EdgeSpec> edges = {{"q0", "a", {"nil"}, "q0"},
                                 {"q0", "b", {"nil"}, "q0"},
                                 {"q0", "a", {"reset"}, "q1"},
                                 {"q1", "a", {"reset"}, "q1"}};
  if (kind == Kind::OmegaS) edges.push_back({"q1", "a", {"inc"}, "q1"});
  return make_counter_automaton(kind, kAB, {"q0", "q1"}, {"q0"}, {"c"}, edges);
}

// Infinitely many b with bounded a-blocks.
CounterAutomaton bounded_blocks() {
  return make_counter_automaton(Kind::OmegaB, kAB, {"p"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"}, {"p", "b", {"reset"}, "p"}});
}

// Infinitely many b with a-blocks tending to infinity.
CounterAutomaton blocks_to_inf() {
  return make_counter_automaton(Kind::OmegaS, kAB, {"p"}, {"p"}, {"c"},
                                {{"p", "a", {"inc"}, "p"}, {"p", "b", {"reset"}, "p"}});
}

// Infinitely many occurrences of bb.
CounterAutomaton inf_bb(Kind kind) {
  const std::string loop = kind == Kind::OmegaS ? "inc" : "nil";
  return make_counter_automaton(kind, kAB, {"p", "q"}, {"p"}, {"c"},
                                {{"p", "a", {loop}, "p"},
                                 {"p", "b", {loop}, "p"},
                                 {"p", "b", {loop}, "q"},
                                 {"q", "b", {"reset"}, "p"}});
}

// Eventually b^omega.
CounterAutomaton eventually_b(Kind kind) {
  std::vector<EdgeSpec> edges = {{"q0", "a", {"nil"}, "q0"},
                                 {"q0", "b", {"nil"}, "q0"},
                                 {"q0", "b", {"reset"}, "q1"},
                                 {"q1", "b", {"reset"}, "q1"}};
  if (kind == Kind::OmegaS) edges.push_back({"q1", "b", {"inc"}, "q1"});
  return make_counter_automaton(kind, kAB, {"q0", "q1"}, {"q0"}, {"c"}, edges);
}

}  // namespace

CounterAutomaton fig1(Kind kind) {
  if (!is_omega(kind)) throw InvalidArgument("fig1 is an omega automaton");
  return make_counter_automaton(kind, kAB, {"qI", "qM"}, {"qI"}, {"c"},
                                {{"qI", "a", {"nil"}, "qI"},
                                 {"qI", "b", {"nil"}, "qI"},
                                 {"qI", "b", {"nil"}, "qM"},
                                 {"qM", "a", {"inc"}, "qM"},
                                 {"qM", "b", {"reset"}, "qI"}});
}

CounterAutomaton fig2() { return count_letter(Kind::S, "a"); }

CounterAutomaton cnt1() {
  return make_counter_automaton(Kind::B, kAB, {"q"}, {"q"}, {"c"},
                                {{"q", "a", {"inc"}, "q"}, {"q", "b", {"reset"}, "q"}}, Finals{{"q"}});
}

CounterAutomaton a1only() {
  return make_counter_automaton(Kind::S, kAB, {"qI", "qF"}, {"qI"}, {"c"},
                                {{"qI", "a", {"inc"}, "qI"}, {"qI", "", {"reset"}, "qF"}}, Finals{{"qF"}});
}

CounterAutomaton b1only() {
  return make_counter_automaton(Kind::S, kAB, {"qI", "qF"}, {"qI"}, {"c"},
                                {{"qI", "b", {"inc"}, "qI"}, {"qI", "", {"reset"}, "qF"}}, Finals{{"qF"}});
}

CounterAutomaton single_increment() {
  return make_counter_automaton(Kind::S, kAB, {"p0", "p1", "f"}, {"p0"}, {"c"},
                                {{"p0", "a", {"inc"}, "p1"},
                                 {"p0", "b", {"nil"}, "p0"},
                                 {"p1", "a", {"nil"}, "p1"},
                                 {"p1", "b", {"nil"}, "p1"},
                                 {"p0", "", {"reset"}, "f"},
                                 {"p1", "", {"reset"}, "f"}},
                                Finals{{"f"}});
}

CounterAutomaton no_accept_S() {
  CounterAutomaton a = fig2();
  a.finals = std::vector<StateId>{};
  return a;
}

CounterAutomaton a_omega(Kind kind) {
  if (!is_omega(kind)) throw InvalidArgument("a_omega is an omega automaton");
  return counterless(kind, {"q"}, {{"q", "a", "q"}}, std::nullopt);
}

std::vector<Fixture> all() {
  return {
      {"fig1", fig1(Kind::OmegaB), "two-state block measuring automaton (wB)"},
      {"fig1_wS", fig1(Kind::OmegaS), "two-state block measuring automaton (wS)"},
      {"fig2", fig2(), "S automaton counting a"},
      {"cnt1", cnt1(), "B automaton measuring a-blocks"},
      {"a1only", a1only(), "S automaton over a* counting a"},
      {"b1only", b1only(), "S automaton over b* counting b"},
      {"single_increment", single_increment(), "S automaton with values at most 1"},
      {"no_accept_S", no_accept_S(), "S automaton without final states"},
      {"aomega", a_omega(Kind::OmegaB), "a^omega (wB)"},
      {"aomega_wS", a_omega(Kind::OmegaS), "a^omega (wS)"},
  };
}

std::vector<ProfinitePair> b_pairs() {
  return {
      {"astar_vs_bplus", b_astar(), b_bplus(), std::nullopt},
      {"cnt1_vs_empty", cnt1(), b_empty(), std::nullopt},
      {"even_vs_odd", b_parity(true), b_parity(false), std::nullopt},
      {"starts_a_vs_starts_b", b_starts_with("a"), b_starts_with("b"), std::nullopt},
      {"contains_ab_vs_bstar_astar", b_contains_ab(), b_bstar_astar(), std::nullopt},
      {"ends_a_vs_ends_b", b_ends_with("a"), b_ends_with("b"), std::nullopt},
      {"astar_vs_contains_b", b_astar(), b_contains_b(), std::nullopt},
      {"aa_star_vs_odd_a", b_aa_star(), b_odd_a(), std::nullopt},
      {"bplus_vs_astar", b_bplus(), b_astar(), std::nullopt},
      {"bstar_astar_vs_contains_ab", b_bstar_astar(), b_contains_ab(), std::nullopt},
      {"empty_vs_cnt1", b_empty(), cnt1(), std::nullopt},
  };
}

std::vector<ProfinitePair> s_pairs() {
  return {
      {"a1only_vs_b1only", a1only(), b1only(), 0},
      {"fig2_vs_at_most_2a", fig2(), at_most_a(2), 0},
      {"fig2_vs_count_b_at_most_1a", fig2(), count_with_limit("b", "a", 1), 0},
      {"count_a_at_most_1b_vs_count_b", count_with_limit("a", "b", 1), count_letter(Kind::S, "b"), 1},
      {"count_a_at_most_2b_vs_count_b", count_with_limit("a", "b", 2), count_letter(Kind::S, "b"), 2},
      {"count_a_at_most_3b_vs_count_b", count_with_limit("a", "b", 3), count_letter(Kind::S, "b"), 3},
      {"fig2_vs_no_accept", fig2(), no_accept_S(), 0},
      {"long_a_blocks_vs_ab_star", s_long_a_blocks(), ab_star(Kind::S), 0},
      {"min_ab_vs_at_most_3b", s_min_ab(), at_most_b(3), 0},
      {"single_increment_vs_fig2", single_increment(), fig2(), 0},
      {"count_b_vs_a1only", count_letter(Kind::S, "b"), a1only(), 0},
  };
}

std::vector<OmegaPair> omega_pairs(Kind kind) {
  if (kind == Kind::OmegaB) {
    const Kind k = Kind::OmegaB;
    return {
        {"fig1_vs_aomega", fig1(k), a_omega(k)},
        {"fig1_vs_fin_b", fig1(k), fin_b(k)},
        {"inf_b_vs_fin_b", inf_b(k), fin_b(k)},
        {"inf_bb_vs_fin_b", inf_bb(k), fin_b(k)},
        {"ab_omega_vs_inf_bb", ab_omega(k), inf_bb(k)},
        {"starts_a_vs_starts_b", starts_with_omega(k, "a"), starts_with_omega(k, "b")},
        {"bounded_blocks_vs_fin_b", bounded_blocks(), fin_b(k)},
    };
  }
  if (kind == Kind::OmegaS) {
    const Kind k = Kind::OmegaS;
    return {
        {"fig1_vs_aomega", fig1(k), a_omega(k)},
        {"fig1_vs_ab_omega", fig1(k), ab_omega(k)},
        {"inf_b_vs_fin_b", inf_b(k), fin_b(k)},
        {"blocks_to_inf_vs_inf_bb", blocks_to_inf(), inf_bb(k)},
        {"fig1_vs_fin_b", fig1(k), fin_b(k)},
        {"blocks_to_inf_vs_eventually_b", blocks_to_inf(), eventually_b(k)},
        {"starts_a_vs_starts_b", starts_with_omega(k, "a"), starts_with_omega(k, "b")},
    };
  }
  throw InvalidArgument("omega_pairs needs an omega kind");
}

std::vector<Fixture> omega_b_catalog() {
  const Kind k = Kind::OmegaB;
  return {
      {"fig1", fig1(k), "liminf of measured a-blocks finite"},
      {"aomega", a_omega(k), "a^omega"},
      {"inf_b", inf_b(k), "infinitely many b"},
      {"fin_b", fin_b(k), "finitely many b"},
      {"bounded_blocks", bounded_blocks(), "infinitely many b, bounded a-blocks"},
      {"inf_bb", inf_bb(k), "infinitely many bb"},
      {"ab_omega", ab_omega(k), "(ab)^omega"},
      {"starts_a", starts_with_omega(k, "a"), "starts with a"},
      {"eventually_b", eventually_b(k), "eventually b^omega"},
  };
}

ComplementaryPair complementary_pair() {
  ComplementaryPair p;
  p.l = inf_b(Kind::OmegaB);
  p.lc = fin_b(Kind::OmegaB);
  p.reference = make_buchi(kAB, {"s0", "s1"}, {"s0"},
                           {{"s0", "a", "s0"}, {"s0", "b", "s1"}, {"s1", "a", "s0"}, {"s1", "b", "s1"}}, {{"s1"}});
  return p;
}

}  // namespace fixtures

// ------------------------------------------------------------------ random

Alphabet default_alphabet(int size) {
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(names);
}

CounterAutomaton random_counter_automaton(std::mt19937_64& rng, Kind kind, const RandomOptions& opts) {
  std::uniform_int_distribution<int> n_dist(1, std::max(1, opts.max_states));
  std::uniform_int_distribution<int> k_dist(opts.at_least_one_counter ? 1 : 0, std::max(0, opts.max_counters));
  std::uniform_int_distribution<int> op_dist(0, 2);
  std::bernoulli_distribution coin(0.5);
  const int n = n_dist(rng);
  const int k = std::max(k_dist(rng), opts.at_least_one_counter ? 1 : 0);
  // Keep the expected out-degree per letter close to `density * 2`.
  std::bernoulli_distribution edge(std::min(1.0, opts.density * 2.0 / std::max(2, n)));
  std::bernoulli_distribution eps(opts.epsilon_density);

  CounterAutomaton a;
  a.kind = kind;
  a.alphabet = default_alphabet(opts.alphabet_size);
  for (int q = 0; q < n; ++q) a.states.push_back("q" + std::to_string(q));
  for (int c = 0; c < k; ++c) a.counters.push_back("c" + std::to_string(c));
  a.initial.push_back(0);
  if (n > 1 && std::bernoulli_distribution(0.2)(rng)) a.initial.push_back(n - 1);
  auto random_ops = [&] {
    std::vector<CounterOp> ops;
    for (int c = 0; c < k; ++c) ops.push_back(static_cast<CounterOp>(op_dist(rng)));
    return ops;
  };
  for (int p = 0; p < n; ++p) {
    for (int x = 0; x < a.alphabet.size(); ++x) {
      for (int q = 0; q < n; ++q) {
        if (edge(rng)) a.transitions.push_back({p, x, random_ops(), q});
      }
    }
  }
  // Silent moves only go forward, so they never form a cycle.
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (eps(rng)) a.transitions.push_back({p, kEpsilon, random_ops(), q});
    }
  }
  if (!is_omega(kind)) {
    a.finals.emplace();
    for (int q = 0; q < n; ++q) {
      if (coin(rng)) a.finals->push_back(q);
    }
  }
  return a;
}

BuchiAutomaton random_buchi(std::mt19937_64& rng, int max_states, double density, int alphabet_size) {
  const int n = std::uniform_int_distribution<int>(1, std::max(1, max_states))(rng);
  std::bernoulli_distribution edge(density);
  std::bernoulli_distribution coin(0.5);
  BuchiAutomaton b;
  b.alphabet = default_alphabet(alphabet_size);
  for (int q = 0; q < n; ++q) b.states.push_back("s" + std::to_string(q));
  b.initial.push_back(0);
  for (int p = 0; p < n; ++p) {
    for (int x = 0; x < alphabet_size; ++x) {
      for (int q = 0; q < n; ++q) {
        if (edge(rng)) b.transitions.push_back({p, x, q});
      }
    }
  }
  const int sets = std::bernoulli_distribution(0.3)(rng) ? 2 : 1;
  for (int i = 0; i < sets; ++i) {
    std::vector<StateId> acc;
    for (int q = 0; q < n; ++q) {
      if (coin(rng)) acc.push_back(q);
    }
    if (acc.empty()) acc.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
    b.acceptance.push_back(std::move(acc));
  }
  return b;
}

// ----------------------------------------------------------------- oracles

std::vector<UPWord> up_grid(const Alphabet& alphabet, int px, int py) {
  std::vector<UPWord> out;
  const auto prefixes = all_words(alphabet, px);
  const auto periods = all_words(alphabet, py);
  for (const auto& x : prefixes) {
    for (const auto& y : periods) {
      if (!y.empty()) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<UPWord> sample_up_members(const CounterAutomaton& a, int px, int py, MembershipRoute route,
                                      size_t budget) {
  const auto grid = up_grid(a.alphabet, px, py);
  if (grid.size() > budget) {
    throw SizeGuardExceeded("sample_up_members: grid has " + std::to_string(grid.size()) + " words, budget is " +
                            std::to_string(budget));
  }
  std::vector<UPWord> out;
  for (const auto& u : grid) {
    if (up_membership(a, u, route)) out.push_back(u);
  }
  return out;
}

bool wB_lasso_oracle(const CounterAutomaton& a, const UPWord& u) {
  if (a.kind != Kind::OmegaB) throw KindMismatch("wB_lasso_oracle: expected an wB automaton");
  const CounterAutomaton p = product_safety(a, up_safety(u, a.alphabet));
  const int n = p.num_states();
  // reach[s] = states reachable from s in at least one step, as a bitset
  // stored in 64-bit words.
  const size_t words = (static_cast<size_t>(n) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(static_cast<size_t>(n), std::vector<std::uint64_t>(words, 0));
  auto set_bit = [&](int s, int t) { reach[static_cast<size_t>(s)][static_cast<size_t>(t) / 64] |= std::uint64_t{1} << (t % 64); };
  auto has = [&](int s, int t) { return ((reach[static_cast<size_t>(s)][static_cast<size_t>(t) / 64] >> (t % 64)) & 1U) != 0; };
  for (const auto& t : p.transitions) set_bit(t.src, t.dst);
  // Warshall closure.
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) {
      if (!has(s, k)) continue;
      for (size_t w = 0; w < words; ++w) reach[static_cast<size_t>(s)][w] |= reach[static_cast<size_t>(k)][w];
    }
  }
  std::vector<bool> reachable(static_cast<size_t>(n), false);
  for (StateId i : p.initial) {
    reachable[static_cast<size_t>(i)] = true;
    for (int t = 0; t < n; ++t) {
      if (has(i, t)) reachable[static_cast<size_t>(t)] = true;
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!reachable[static_cast<size_t>(s)] || !has(s, s)) continue;
    bool all = true;
    for (int c = 0; c < p.num_counters() && all; ++c) {
      bool found = false;
      for (const auto& t : p.transitions) {
        if (t.ops[static_cast<size_t>(c)] != CounterOp::Reset) continue;
        const bool from_s = t.src == s || has(s, t.src);
        const bool back = t.dst == s || has(t.dst, s);
        if (from_s && back) {
          found = true;
          break;
        }
      }
      all = found;
    }
    if (all) return true;
  }
  return false;
}

std::vector<std::pair<std::uint64_t, std::size_t>> growth_probe(const CounterAutomaton& a, std::uint64_t max_n) {
  std::vector<std::pair<std::uint64_t, std::size_t>> out;
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    auto w = nfa_shortest_word(cutoff_S(a, n));
    if (!w) break;
    out.emplace_back(n, w->size());
  }
  return out;
}

ExtNat max_value_up_to(const CounterAutomaton& a, int max_len) {
  ExtNat best = 0;
  bool any = false;
  for (const auto& w : all_words(a.alphabet, max_len)) {
    const ExtNat v = value_of(a, w);
    if (!any || v > best) best = v;
    any = true;
  }
  return best;
}

GrowthVerdict check_growth_consistency(const CounterAutomaton& a) {
  GrowthVerdict g;
  g.is_empty = is_empty_S(a);
  const auto probe = growth_probe(a, 3);
  std::ostringstream detail;
  detail << (g.is_empty ? "empty" : "non-empty") << ", probe:";
  for (const auto& [n, len] : probe) detail << " (" << n << "," << len << ")";
  if ((probe.size() == 4) == g.is_empty) {
    g.consistent = false;
    detail << "; probe disagrees with the verdict";
  }
  if (!g.is_empty) {
    const std::uint64_t q = static_cast<std::uint64_t>(a.num_states());
    const std::uint64_t k = static_cast<std::uint64_t>(a.num_counters());
    for (const auto& [n, len] : probe) {
      const std::uint64_t bound = n * q * (k + 1) + q;
      if (len > bound) {
        g.consistent = false;
        detail << "; shortest word above " << n << " is longer than " << bound;
      }
    }
  } else {
    const ExtNat v6 = max_value_up_to(a, 6);
    const ExtNat v8 = max_value_up_to(a, 8);
    if (v6 != v8) {
      g.consistent = false;
      detail << "; maximum value grows from " << v6.to_string() << " to " << v8.to_string();
    }
  }
  g.detail = detail.str();
  return g;
}

// ------------------------------------------------------------ verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json VerificationReport::to_json(bool with_times) const {
  Json doc;
  doc["passed"] = passed();
  doc["seed"] = seed;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["checked"] = c.checked;
    j["failures"] = c.failures;
    if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
    if (with_times) j["seconds"] = c.seconds;
    arr.push_back(std::move(j));
  }
  doc["checks"] = std::move(arr);
  return doc;
}

namespace {

template <typename F>
CheckResult timed_check(const std::string& name, F&& body) {
  CheckResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    ++r.failures;
    if (r.counterexample.empty()) r.counterexample = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void fail(CheckResult& r, const std::string& why) {
  r.passed = false;
  ++r.failures;
  if (r.counterexample.empty()) r.counterexample = why;
}

std::string render_up(const Alphabet& alphabet, const UPWord& u) {
  return alphabet.render(u.prefix) + "(" + alphabet.render(u.period) + ")^w";
}

// Checks one certificate pair and returns the replayed component.
std::optional<BuchiAutomaton> replay_pair(CheckResult& r, const CertificatePair& p, size_t index, Kind kind,
                                          const CounterAutomaton& a1, const CounterAutomaton& a2,
                                          const TransitionMonoid& m1, const TransitionMonoid& m2) {
  const std::string tag = "pair " + std::to_string(index) + ": ";
  ++r.checked;
  if (!is_linked_pair(m1, p.t1) || !is_linked_pair(m2, p.t2)) {
    fail(r, tag + "not a linked pair");
    return std::nullopt;
  }
  if (p.w_e.empty() || m1.image(p.w_s) != p.t1.s || m2.image(p.w_s) != p.t2.s || m1.image(p.w_e) != p.t1.e ||
      m2.image(p.w_e) != p.t2.e) {
    fail(r, tag + "witness words do not realize the pair");
    return std::nullopt;
  }
  const CounterAutomaton u1 = mt_union(build_M_t(a1, m1, p.t1), a1);
  const CounterAutomaton u2 = mt_union(build_M_t(a2, m2, p.t2), a2);
  if (kind == Kind::OmegaB) {
    if (!nfa_is_empty(nfa_intersect(p.r, strip(u2)))) {
      fail(r, tag + "R meets the second reduction language");
      return std::nullopt;
    }
    if (!nfa_subset(strip(u1), p.r)) {
      fail(r, tag + "R misses part of the first reduction language");
      return std::nullopt;
    }
  } else {
    if (!is_empty_S(restrict_profinite(u2, p.r))) {
      fail(r, tag + "R meets the second reduction language");
      return std::nullopt;
    }
    if (!is_empty_S(restrict_profinite(u1, nfa_complement(p.r)))) {
      fail(r, tag + "R misses part of the first reduction language");
      return std::nullopt;
    }
    if (p.n0 > 0 && is_empty_S(restrict_profinite(u1, cutoff_S(u2, p.n0 - 1)))) {
      fail(r, tag + "recorded threshold is not the least one");
      return std::nullopt;
    }
  }
  BuchiAutomaton component = buchi_trim(build_S_t1t2(p.t1, p.t2, m1, m2, p.r));
  const bool nonempty = !buchi_is_empty(component);
  if ((nonempty ? component.num_states() : 0) != p.component_states) {
    fail(r, tag + "component size differs from the recorded one");
    return std::nullopt;
  }
  if (!nonempty) return std::nullopt;
  return component;
}

}  // namespace

VerificationReport verify_separation(const CounterAutomaton& a1, const CounterAutomaton& a2, const BuchiAutomaton& sep,
                                     const SeparatorCertificate* certificate, const VerifyOptions& opts) {
  if (!is_omega(a1.kind) || a1.kind != a2.kind) throw KindMismatch("verify: expected two automata of the same omega kind");
  require_same_alphabet(a1.alphabet, a2.alphabet, "verify");
  require_same_alphabet(a1.alphabet, sep.alphabet, "verify");
  VerificationReport report;
  report.seed = opts.seed;

  report.checks.push_back(timed_check("separator_disjoint_from_second", [&](CheckResult& r) {
    r.checked = 1;
    try {
      require_omega_disjoint(buchi_to_omegaT(sep, a2.kind), a2, "verify");
    } catch (const NotDisjoint& e) {
      std::string why = "separator meets the second language";
      if (e.has_witness()) {
        why += " on " + a1.alphabet.render(a1.alphabet.from_names(e.witness_prefix())) + "(" +
               a1.alphabet.render(a1.alphabet.from_names(e.witness_period())) + ")^w";
      }
      fail(r, why);
    }
  }));

  report.checks.push_back(timed_check("first_contained_in_separator", [&](CheckResult& r) {
    for (const auto& u : up_grid(a1.alphabet, opts.px, opts.py)) {
      if (!up_membership(a1, u, MembershipRoute::SafetyProduct)) continue;
      ++r.checked;
      if (!buchi_up_membership(sep, u)) fail(r, "member of the first language rejected: " + render_up(a1.alphabet, u));
    }
  }));

  if (certificate != nullptr) {
    report.checks.push_back(timed_check("certificate_hashes", [&](CheckResult& r) {
      r.checked = 2;
      if (certificate->kind != a1.kind) fail(r, "certificate kind differs from the inputs");
      if (certificate->input_hash != input_hash(a1, a2)) fail(r, "certificate was issued for different inputs");
      if (certificate->separator_hash != stable_hash(dump_automaton(sep))) {
        fail(r, "certificate was issued for a different separator");
      }
    }));
    report.checks.push_back(timed_check("certificate_replay", [&](CheckResult& r) {
      const auto m1 = TransitionMonoid::of(a1);
      const auto m2 = TransitionMonoid::of(a2);
      BuchiAutomaton rebuilt = buchi_empty(a1.alphabet);
      bool any = false;
      for (size_t i = 0; i < certificate->pairs.size(); ++i) {
        auto component = replay_pair(r, certificate->pairs[i], i, certificate->kind, a1, a2, m1, m2);
        if (!component) continue;
        rebuilt = any ? buchi_union(rebuilt, *component) : *component;
        any = true;
      }
      ++r.checked;
      if (stable_hash(dump_automaton(buchi_trim(rebuilt))) != stable_hash(dump_automaton(sep))) {
        fail(r, "replayed components do not rebuild the separator");
      }
    }));
  }
  return report;
}

// ------------------------------------------------------ certificate format

namespace {

Json relation_to_json(const Relation& rel, const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (const auto& [p, q] : rel.pairs()) arr.push_back(Json::array({names[static_cast<size_t>(p)], names[static_cast<size_t>(q)]}));
  return arr;
}

ElementId relation_from_json(const Json& arr, const TransitionMonoid& m, const std::vector<std::string>& names) {
  Relation rel(m.num_states());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("certificate: a relation entry must be a pair of states", 0, 0);
    rel.set(state_index(names, pair[0].get<std::string>()), state_index(names, pair[1].get<std::string>()));
  }
  auto id = m.find(rel);
  if (!id) throw ParseError("certificate: relation is not an element of the transition monoid", 0, 0);
  return *id;
}

Json linked_to_json(const LinkedPair& t, const TransitionMonoid& m, const std::vector<std::string>& names) {
  return Json{{"s", relation_to_json(m.element(t.s), names)}, {"e", relation_to_json(m.element(t.e), names)}};
}

LinkedPair linked_from_json(const Json& j, const TransitionMonoid& m, const std::vector<std::string>& names) {
  return LinkedPair{relation_from_json(j.at("s"), m, names), relation_from_json(j.at("e"), m, names)};
}

}  // namespace

Json certificate_to_json(const SeparatorCertificate& cert, const CounterAutomaton& a1, const CounterAutomaton& a2) {
  const auto m1 = TransitionMonoid::of(a1);
  const auto m2 = TransitionMonoid::of(a2);
  Json doc;
  doc["kind"] = std::string(kind_tag(cert.kind));
  doc["input_hash"] = cert.input_hash;
  doc["separator_hash"] = cert.separator_hash;
  doc["coherent_pairs"] = cert.coherent_pairs;
  Json pairs = Json::array();
  for (const auto& p : cert.pairs) {
    Json j;
    j["t1"] = linked_to_json(p.t1, m1, a1.states);
    j["t2"] = linked_to_json(p.t2, m2, a2.states);
    j["w_s"] = a1.alphabet.names_of(p.w_s);
    j["w_e"] = a1.alphabet.names_of(p.w_e);
    j["n0"] = p.n0;
    j["parts1"] = p.parts1;
    j["parts2"] = p.parts2;
    j["component_states"] = p.component_states;
    j["R"] = to_json(p.r);
    pairs.push_back(std::move(j));
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

SeparatorCertificate certificate_from_json(const Json& doc, const CounterAutomaton& a1, const CounterAutomaton& a2) {
  try {
    const auto m1 = TransitionMonoid::of(a1);
    const auto m2 = TransitionMonoid::of(a2);
    SeparatorCertificate cert;
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == kind_tag(Kind::OmegaB)) {
      cert.kind = Kind::OmegaB;
    } else if (kind == kind_tag(Kind::OmegaS)) {
      cert.kind = Kind::OmegaS;
    } else {
      throw ParseError("certificate: unknown kind '" + kind + "'", 0, 0);
    }
    cert.input_hash = doc.at("input_hash").get<std::string>();
    cert.separator_hash = doc.at("separator_hash").get<std::string>();
    cert.coherent_pairs = doc.at("coherent_pairs").get<int>();
    for (const auto& j : doc.at("pairs")) {
      CertificatePair p;
      p.t1 = linked_from_json(j.at("t1"), m1, a1.states);
      p.t2 = linked_from_json(j.at("t2"), m2, a2.states);
      p.w_s = a1.alphabet.from_names(j.at("w_s").get<std::vector<std::string>>());
      p.w_e = a1.alphabet.from_names(j.at("w_e").get<std::vector<std::string>>());
      p.n0 = j.at("n0").get<std::uint64_t>();
      p.parts1 = j.at("parts1").get<int>();
      p.parts2 = j.at("parts2").get<int>();
      p.component_states = j.at("component_states").get<int>();
      auto r = automaton_from_json(j.at("R"));
      if (!std::holds_alternative<Nfa>(r)) throw ParseError("certificate: R must be an NFA", 0, 0);
      p.r = std::get<Nfa>(std::move(r));
      cert.pairs.push_back(std::move(p));
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what(), 0, 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("certificate: ") + e.what(), 0, 0);
  }
}

}  // namespace omegasep
