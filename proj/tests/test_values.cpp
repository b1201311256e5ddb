#include <gtest/gtest.h>

#include <random>

#include "omegasep/harness.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/values.hpp"
#include "oracles.hpp"

using namespace omegasep;

namespace {

const Alphabet kAB({"a", "b"});

Word w(const std::string& text) { return kAB.parse(text); }

ExtNat as_ext(std::uint64_t v) { return v == oracle::kInf ? ExtNat::infinity() : ExtNat(v); }

}  // namespace

TEST(ExtNat, OrderAndRendering) {
  EXPECT_LT(ExtNat(3), ExtNat::infinity());
  EXPECT_EQ(ExtNat::infinity().to_string(), "inf");
  EXPECT_EQ(ExtNat(7).to_string(), "7");
}

TEST(ValueB, Cnt1Examples) {
  const auto a = fixtures::cnt1();
  EXPECT_EQ(value_B(a, w("aabab")), ExtNat(oracle::run_value(a, w("aabab"))));
  EXPECT_EQ(value_B(a, w("aabab")), ExtNat(2));
  EXPECT_EQ(value_B(a, w("")), ExtNat(0));
}

TEST(ValueB, NoAcceptingRunIsInfinite) {
  auto a = fixtures::cnt1();
  a.finals = std::vector<StateId>{};
  for (const auto& x : all_words(kAB, 4)) EXPECT_TRUE(value_B(a, x).is_infinite());
}

TEST(ValueB, ResetFreeRunCountsOnlyActualResets) {
  // Accepting run a^n with increments but no reset has value 0.
  const auto a = make_counter_automaton(Kind::B, {"a", "b"}, {"p"}, {"p"}, {"c"}, {{"p", "a", {"inc"}, "p"}},
                                        std::vector<std::string>{"p"});
  EXPECT_EQ(value_B(a, w("aaaa")), ExtNat(0));
}

TEST(ValueS, Fig2CountsLetterA) {
  const auto a = fixtures::fig2();
  EXPECT_EQ(value_S(a, w("aab")), ExtNat(2));
  EXPECT_EQ(value_S(a, w("bbb")), ExtNat(0));
  EXPECT_EQ(value_S(a, w("")), ExtNat(oracle::run_value(a, w(""))));
  EXPECT_EQ(value_S(a, w("")), ExtNat(0));
}

TEST(ValueS, ResetFreeAcceptingRunIsInfinite) {
  const auto a = make_counter_automaton(Kind::S, {"a", "b"}, {"p"}, {"p"}, {"c"}, {{"p", "a", {"inc"}, "p"}},
                                        std::vector<std::string>{"p"});
  EXPECT_TRUE(value_S(a, w("aa")).is_infinite());
}

TEST(Values, AgreeWithRunEnumerationOnRandomAutomata) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const Kind k = i % 2 == 0 ? Kind::B : Kind::S;
    const auto a = random_counter_automaton(rng, k);
    for (const auto& x : all_words(a.alphabet, 5)) {
      ASSERT_EQ(value_of(a, x), as_ext(oracle::run_value(a, x))) << dump_automaton(a) << "\n" << a.alphabet.render(x);
    }
  }
}

TEST(CutoffB, Cnt1Thresholds) {
  const auto a = fixtures::cnt1();
  const Nfa n1 = cutoff_B(a, 1);
  EXPECT_TRUE(nfa_member(n1, w("abab")));
  EXPECT_FALSE(nfa_member(n1, w("aaba")));
  const Nfa n0 = cutoff_B(a, 0);
  EXPECT_TRUE(nfa_member(n0, w("b")));
  EXPECT_FALSE(nfa_member(n0, w("ab")));
  for (const auto& x : all_words(kAB, 6)) {
    EXPECT_EQ(nfa_member(n0, x), value_B(a, x) <= ExtNat(0)) << kAB.render(x);
  }
}

TEST(CutoffB, LargeThresholdIsUnderlyingLanguage) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_counter_automaton(rng, Kind::B);
    const Nfa big = cutoff_B(a, 6);
    const Nfa plain = strip(a);
    for (const auto& x : all_words(a.alphabet, 5)) EXPECT_EQ(oracle::accepts(big, x), oracle::accepts(plain, x));
  }
}

TEST(CutoffS, Fig2Thresholds) {
  const auto a = fixtures::fig2();
  const Nfa n0 = cutoff_S(a, 0);
  EXPECT_TRUE(nfa_member(n0, w("ba")));
  EXPECT_FALSE(nfa_member(n0, w("bb")));
  const Nfa n3 = cutoff_S(a, 3);
  EXPECT_TRUE(nfa_member(n3, w("aaaa")));
  EXPECT_FALSE(nfa_member(n3, w("aaab")));
  EXPECT_FALSE(nfa_member(n3, w("aab")));
}

TEST(CutoffS, MonotoneOnFig2) {
  const auto a = fixtures::fig2();
  const Nfa n4 = cutoff_S(a, 4);
  const Nfa n3 = cutoff_S(a, 3);
  for (const auto& x : all_words(kAB, 6)) {
    if (oracle::accepts(n4, x)) EXPECT_TRUE(oracle::accepts(n3, x));
  }
  EXPECT_TRUE(nfa_subset(n4, n3));
}

TEST(EnumerateValues, Fig2AndCnt1) {
  const auto values = enumerate_values(fixtures::fig2(), 4);
  ASSERT_TRUE(values.count(w("aa")));
  EXPECT_EQ(values.at(w("aa")), ExtNat(2));
  const auto empty_only = enumerate_values(fixtures::cnt1(), 0);
  ASSERT_EQ(empty_only.size(), 1U);
  EXPECT_EQ(empty_only.at(Word{}), ExtNat(0));
}

TEST(EnumerateValues, AgreesWithDynamicProgramming) {
  std::mt19937_64 rng(31);
  RandomOptions opts;
  opts.max_states = 3;
  for (int i = 0; i < 20; ++i) {
    const auto a = random_counter_automaton(rng, Kind::B, opts);
    for (const auto& [x, v] : enumerate_values(a, 5)) EXPECT_EQ(v, value_B(a, x));
  }
}

TEST(AllWords, LengthLexOrder) {
  const auto words = all_words(kAB, 2);
  ASSERT_EQ(words.size(), 7U);
  EXPECT_TRUE(words[0].empty());
  EXPECT_EQ(kAB.render(words[1]), "a");
  EXPECT_EQ(kAB.render(words[6]), "bb");
}

TEST(RegularAlgebra, Examples) {
  const Nfa astar = nfa_letters_star(kAB, {0});
  const Nfa bstar = nfa_letters_star(kAB, {1});
  EXPECT_TRUE(nfa_member(nfa_complement(astar), w("b")));
  EXPECT_TRUE(nfa_equivalent(nfa_intersect(astar, bstar), nfa_word(kAB, {})));

  // (ab)* as a two-state loop and as {ε} ∪ (ab)+.
  Nfa loop;
  loop.alphabet = kAB;
  loop.states = {"s0", "s1"};
  loop.initial = {0};
  loop.finals = {0};
  loop.transitions = {{0, 0, 1}, {1, 1, 0}};
  const Nfa other = nfa_union(nfa_word(kAB, {}), nfa_word_plus(kAB, w("ab")));
  EXPECT_TRUE(nfa_equivalent(loop, other));
  for (const auto& x : all_words(kAB, 8)) EXPECT_EQ(oracle::accepts(loop, x), oracle::accepts(other, x));
}

TEST(RegularAlgebra, ShortestWord) {
  EXPECT_FALSE(nfa_shortest_word(nfa_empty(kAB)).has_value());
  const auto s = nfa_shortest_word(nfa_word_plus(kAB, w("ab")));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(kAB.render(*s), "ab");
}

TEST(RegularAlgebra, DeterminizeAndMinimize) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const Nfa n = strip(random_counter_automaton(rng, Kind::B));
    const Nfa d = determinize(n, true);
    const Nfa m = minimize(n);
    EXPECT_TRUE(is_deterministic(d));
    EXPECT_TRUE(is_deterministic(m));
    EXPECT_LE(m.num_states(), d.num_states());
    for (const auto& x : all_words(n.alphabet, 5)) {
      const bool expected = oracle::accepts(n, x);
      EXPECT_EQ(oracle::accepts(d, x), expected);
      EXPECT_EQ(oracle::accepts(m, x), expected);
      EXPECT_EQ(oracle::accepts(trim(n), x), expected);
    }
  }
}

TEST(RegularAlgebra, SizeGuard) {
  // The k-th letter from the end is an a: the subset construction needs 2^k states.
  const int k = 6;
  Nfa n;
  n.alphabet = kAB;
  for (int i = 0; i <= k; ++i) n.states.push_back("s" + std::to_string(i));
  n.initial = {0};
  n.finals = {k};
  n.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 1; i < k; ++i) {
    n.transitions.push_back({i, 0, i + 1});
    n.transitions.push_back({i, 1, i + 1});
  }
  EXPECT_THROW(determinize(n, true, 16), SizeGuardExceeded);
  EXPECT_EQ(determinize(n, true).num_states(), 1 << k);
}
