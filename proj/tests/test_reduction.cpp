#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "omegasep/harness.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/reduction.hpp"
#include "omegasep/values.hpp"
#include "oracles.hpp"

using namespace omegasep;

namespace {

const Alphabet kAB({"a", "b"});

Word w(const std::string& text) { return kAB.parse(text); }

StateId state(const CounterAutomaton& a, const std::string& name) {
  auto it = std::find(a.states.begin(), a.states.end(), name);
  if (it == a.states.end()) throw std::runtime_error("no state " + name);
  return static_cast<StateId>(it - a.states.begin());
}

Word repeat(const Word& y, int times) {
  Word out;
  for (int i = 0; i < times; ++i) out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::vector<CounterAutomaton> omega_catalog(Kind kind) {
  std::vector<CounterAutomaton> out;
  for (const auto& p : fixtures::omega_pairs(kind)) {
    out.push_back(p.a1);
    out.push_back(p.a2);
  }
  if (kind == Kind::OmegaB) {
    for (const auto& f : fixtures::omega_b_catalog()) out.push_back(f.automaton);
  }
  return out;
}

bool mt_restricted_nonempty(const MtLanguage& mt, const Nfa& n) {
  return std::any_of(mt.parts.begin(), mt.parts.end(),
                     [&](const MtPart& p) { return !is_empty_T(restrict_profinite(p.automaton, n)); });
}

}  // namespace

// CNT1 has transition 0 = "a / inc" and transition 1 = "b / reset".

TEST(EndType, NoResetsAnywhereIsLeft) {
  const auto a = fixtures::cnt1();
  const omegasep::Run run{{0, 0, 0}};
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(end_type(a, run, 0, k), EndType::Left) << k;
}

TEST(EndType, MissingResetOnTheLeftCountsZero) {
  const auto a = fixtures::cnt1();
  const omegasep::Run run{{0, 0, 0, 1}};  // aaab
  EXPECT_EQ(end_type(a, run, 0, 0), EndType::Right);
  // Left of the cut after "aa" there is no reset, so V_L = 0 < V_R = 1.
  EXPECT_EQ(end_type(a, run, 0, 2), EndType::Right);
  EXPECT_EQ(end_type(a, run, 0, 4), EndType::Left);
}

TEST(EndType, ResetsOnBothSides) {
  const auto a = fixtures::cnt1();
  const omegasep::Run run{{0, 1, 0, 0, 1, 0, 1}};  // abaabab
  EXPECT_EQ(end_type(a, run, 0, 2), EndType::Right);  // V_L = 0, V_R = 2
  EXPECT_EQ(end_type(a, run, 0, 3), EndType::Left);   // V_L = 1, V_R = 1
  EXPECT_EQ(end_type(a, run, 0, 4), EndType::Left);   // V_L = 2, V_R = 0
  EXPECT_EQ(end_type(a, run, 0, 5), EndType::Right);  // V_L = 0, V_R = 1
}

TEST(EndType, RejectsUnknownCounterAndCut) {
  const auto a = fixtures::cnt1();
  const omegasep::Run run{{0, 1}};
  EXPECT_THROW(end_type(a, run, 1, 0), InvalidArgument);
  EXPECT_THROW(end_type(a, run, 0, 3), InvalidArgument);
}

TEST(EndType, Rendering) {
  EXPECT_EQ(tau_to_string(0b01, 2), "<-,->");
  EXPECT_EQ(to_string(EndType::Right), "->");
}

TEST(BuildAq, DegenerateStateGivesEmptyAutomaton) {
  const auto a = fixtures::fig1(Kind::OmegaB);
  const auto m = TransitionMonoid::of(a);
  // h(a) relates qI and qM only to themselves; h(a) is idempotent.
  const ElementId ha = m.image(w("a"));
  ASSERT_TRUE(m.is_idempotent(ha));
  const LinkedPair t{ha, ha};
  const StateId qm = state(a, "qM");
  EXPECT_TRUE(is_degenerate(a, m, t, qm));  // no initial state reaches qM under h(a)
  EXPECT_TRUE(nfa_is_empty(strip(build_A_q(a, m, t, qm))));
  EXPECT_FALSE(is_degenerate(a, m, t, state(a, "qI")));
}

TEST(BuildAq, LoopNotInIdempotentIsDegenerate) {
  const auto catalog = fixtures::omega_b_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(), [](const Fixture& f) { return f.name == "inf_b"; });
  ASSERT_NE(it, catalog.end());
  const auto& a = it->automaton;
  const auto m = TransitionMonoid::of(a);
  for (const auto& t : linked_pairs(m)) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (!m.element(t.e).get(q, q)) {
        EXPECT_TRUE(is_degenerate(a, m, t, q));
        EXPECT_TRUE(nfa_is_empty(strip(build_A_q(a, m, t, q))));
      }
    }
  }
}

TEST(BuildAq, Fig1PeriodicAbIsNonempty) {
  const auto a = fixtures::fig1(Kind::OmegaB);
  const auto m = TransitionMonoid::of(a);
  const auto d = up_decomposition(make_up_word(kAB, "", "ab"), m);
  const auto part = build_A_q(a, m, d.t, state(a, "qI"));
  EXPECT_FALSE(is_empty_B(part));
  EXPECT_TRUE(up_membership(a, make_up_word(kAB, "", "ab"), MembershipRoute::SafetyProduct));
}

TEST(BuildAq, FullStateSpaceSize) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_counter_automaton(rng, Kind::OmegaB);
    const auto m = TransitionMonoid::of(a);
    const int qe = k_e_automaton(m, 0).num_states();
    ReductionOptions full;
    full.reachable_only = false;
    for (const auto& t : linked_pairs(m)) {
      for (StateId q = 0; q < a.num_states(); ++q) {
        if (is_degenerate(a, m, t, q)) continue;
        const auto part = build_A_q(a, m, t, q, full);
        EXPECT_EQ(part.num_states(), 1 + a.num_states() * qe * (1 << a.num_counters()));
        const auto reachable = build_A_q(a, m, t, q);
        EXPECT_LE(reachable.num_states(), part.num_states());
        EXPECT_TRUE(nfa_equivalent(strip(part), strip(reachable)));
      }
    }
  }
}

TEST(BuildAq, RejectsNonLinkedPairAndWrongKind) {
  const auto a = fixtures::fig1(Kind::OmegaB);
  const auto m = TransitionMonoid::of(a);
  const ElementId hb = m.image(w("b"));
  ASSERT_FALSE(m.is_idempotent(hb));
  EXPECT_THROW(build_A_q(a, m, {hb, hb}, 0), InvalidArgument);
  const auto s = fixtures::fig1(Kind::OmegaS);
  EXPECT_THROW(build_A_q(s, TransitionMonoid::of(s), {0, 0}, 0), KindMismatch);
}

TEST(BuildAqTau, AllRightOnlyDropsTheEndReset) {
  const auto b = fixtures::fig1(Kind::OmegaB);
  const auto s = fixtures::fig1(Kind::OmegaS);
  const auto m = TransitionMonoid::of(s);
  for (const auto& t : linked_pairs(m)) {
    for (StateId q = 0; q < s.num_states(); ++q) {
      const auto with_end = build_A_q(b, m, t, q);
      const auto part = build_A_q_tau(s, m, t, q, 0);
      ASSERT_EQ(part.transitions.size(), with_end.transitions.size());
      for (size_t i = 0; i < part.transitions.size(); ++i) {
        const auto& x = part.transitions[i];
        const auto& y = with_end.transitions[i];
        EXPECT_EQ(x.src, y.src);
        EXPECT_EQ(x.dst, y.dst);
        EXPECT_EQ(x.label, y.label);
        if (x.dst == 0) {
          EXPECT_EQ(x.ops, std::vector<CounterOp>{CounterOp::Nil});
          EXPECT_EQ(y.ops, std::vector<CounterOp>{CounterOp::Reset});
        } else {
          EXPECT_EQ(x.ops, y.ops);
        }
      }
    }
  }
}

TEST(BuildAqTau, AllLeftSkipsFirstResetAndAddsEndReset) {
  // From qM the loop "b b a^n" resets on the first b (skipped), then counts
  // n increments that the end reset measures.
  const auto a = fixtures::fig1(Kind::OmegaS);
  const auto m = TransitionMonoid::of(a);
  const ElementId full = m.image(w("bb"));
  const LinkedPair t{full, full};
  ASSERT_TRUE(is_linked_pair(m, t));
  const auto part = build_A_q_tau(a, m, t, state(a, "qM"), 1);
  for (int n = 1; n <= 5; ++n) {
    const Word x = w("bb" + std::string(static_cast<size_t>(n), 'a'));
    EXPECT_EQ(value_S(part, x), ExtNat(static_cast<std::uint64_t>(n))) << n;
    EXPECT_EQ(oracle::run_value(part, x), static_cast<std::uint64_t>(n));
  }
  // Without skipping, the first reset happens before any increment.
  const auto direct = build_A_q_tau(a, m, t, state(a, "qM"), 0);
  EXPECT_EQ(value_S(direct, w("bbaaa")), ExtNat(0));
}

TEST(BuildAqTau, UnreachableStateIsEmpty) {
  const auto a = fixtures::fig1(Kind::OmegaS);
  const auto m = TransitionMonoid::of(a);
  const ElementId ha = m.image(w("a"));
  const auto part = build_A_q_tau(a, m, {ha, ha}, state(a, "qM"), 1);
  EXPECT_TRUE(nfa_is_empty(strip(part)));
}

TEST(BuildMt, Fig1VerdictsOnPeriodicAb) {
  const UPWord u = make_up_word(kAB, "", "ab");
  const auto b = fixtures::fig1(Kind::OmegaB);
  const auto mb = TransitionMonoid::of(b);
  const auto d = up_decomposition(u, mb);
  const Nfa blocks = nfa_word_plus(kAB, repeat(u.period, d.m));
  const auto mt_b = build_M_t(b, mb, d.t);
  EXPECT_EQ(mt_b.kind, Kind::B);
  EXPECT_TRUE(std::any_of(mt_b.parts.begin(), mt_b.parts.end(), [](const MtPart& p) { return !is_empty_B(p.automaton); }));
  EXPECT_TRUE(mt_restricted_nonempty(mt_b, blocks));

  const auto s = fixtures::fig1(Kind::OmegaS);
  const auto ms = TransitionMonoid::of(s);
  const auto mt_s = build_M_t(s, ms, up_decomposition(u, ms).t);
  EXPECT_EQ(mt_s.kind, Kind::S);
  EXPECT_FALSE(mt_restricted_nonempty(mt_s, blocks));
}

TEST(BuildMt, CounterlessPartsAreLoopLanguagesInKe) {
  std::mt19937_64 rng(103);
  RandomOptions opts;
  opts.max_counters = 0;
  for (int i = 0; i < 25; ++i) {
    const Kind kind = i % 2 == 0 ? Kind::OmegaB : Kind::OmegaS;
    const auto a = random_counter_automaton(rng, kind, opts);
    ASSERT_EQ(a.num_counters(), 0);
    const auto m = TransitionMonoid::of(a);
    for (const auto& t : linked_pairs(m)) {
      const auto mt = build_M_t(a, m, t);
      for (const auto& part : mt.parts) {
        ASSERT_TRUE(m.element(t.e).get(part.q, part.q));
        // With no counters every word of K_e is a loop on q, and nothing else is.
        EXPECT_TRUE(nfa_equivalent(strip(part.automaton), k_e_automaton(m, t.e)));
      }
      size_t expected_parts = 0;
      for (StateId q = 0; q < a.num_states(); ++q) expected_parts += is_degenerate(a, m, t, q) ? 0 : 1;
      EXPECT_EQ(mt.parts.size(), expected_parts);
    }
  }
}

TEST(BuildMt, PartsAreContainedInKe) {
  std::mt19937_64 rng(107);
  RandomOptions opts;
  opts.max_states = 3;
  for (int i = 0; i < 30; ++i) {
    const Kind kind = i % 2 == 0 ? Kind::OmegaB : Kind::OmegaS;
    const auto a = random_counter_automaton(rng, kind, opts);
    const auto m = TransitionMonoid::of(a);
    for (const auto& t : linked_pairs(m)) {
      const Nfa outside = nfa_complement(k_e_automaton(m, t.e));
      for (const auto& part : build_M_t(a, m, t).parts) {
        EXPECT_TRUE(nfa_is_empty(nfa_intersect(strip(part.automaton), outside)));
      }
    }
  }
}

TEST(BuildMt, KeAutomatonRecognizesPreimage) {
  const auto a = fixtures::fig1(Kind::OmegaB);
  const auto m = TransitionMonoid::of(a);
  for (ElementId e = 0; e < static_cast<ElementId>(m.size()); ++e) {
    const Nfa ke = k_e_automaton(m, e);
    EXPECT_TRUE(is_deterministic(ke));
    for (const auto& x : all_words(kAB, 6)) {
      EXPECT_EQ(nfa_member(ke, x), oracle::word_relation(strip(a), x) == oracle::as_set(m.element(e)));
    }
  }
}

TEST(BuildMt, UnionMatchesParts) {
  const auto a = fixtures::fig1(Kind::OmegaS);
  const auto m = TransitionMonoid::of(a);
  for (const auto& t : linked_pairs(m)) {
    const auto mt = build_M_t(a, m, t);
    const auto u = mt_union(mt, a);
    Nfa parts = nfa_empty(kAB);
    for (const auto& p : mt.parts) parts = nfa_union(parts, strip(p.automaton));
    EXPECT_TRUE(nfa_equivalent(strip(u), parts));
    EXPECT_EQ(is_empty_S(u), std::all_of(mt.parts.begin(), mt.parts.end(),
                                         [](const MtPart& p) { return is_empty_S(p.automaton); }));
  }
}

TEST(Reduction, UltimatelyPeriodicEquivalenceOnCatalog) {
  for (const Kind kind : {Kind::OmegaB, Kind::OmegaS}) {
    for (const auto& a : omega_catalog(kind)) {
      const auto m = TransitionMonoid::of(a);
      for (const auto& u : up_grid(a.alphabet, 2, 3)) {
        const auto d = up_decomposition(u, m);
        const bool via_parts = mt_restricted_nonempty(build_M_t(a, m, d.t), nfa_word_plus(a.alphabet, repeat(u.period, d.m)));
        EXPECT_EQ(via_parts, up_membership(a, u, MembershipRoute::SafetyProduct))
            << dump_automaton(a) << "\n" << a.alphabet.render(u.prefix) << " (" << a.alphabet.render(u.period) << ")^w";
      }
    }
  }
}
