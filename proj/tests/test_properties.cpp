#include <gtest/gtest.h>

#include <random>

#include "omegasep/harness.hpp"
#include "omegasep/io.hpp"
#include "omegasep/monoid.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/values.hpp"
#include "oracles.hpp"

using namespace omegasep;

namespace {

Word random_word(std::mt19937_64& rng, const Alphabet& alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<SymbolId> letter(0, alphabet.size() - 1);
  Word w(static_cast<size_t>(len(rng)));
  for (auto& x : w) x = letter(rng);
  return w;
}

Word repeat(const Word& y, int times) {
  Word out;
  for (int i = 0; i < times; ++i) out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

TEST(Property, CutoffsAreNestedAndMatchValues) {
  std::mt19937_64 rng(401);
  RandomOptions opts;
  opts.max_states = 3;
  for (int i = 0; i < 40; ++i) {
    const Kind kind = i % 2 == 0 ? Kind::B : Kind::S;
    const auto a = random_counter_automaton(rng, kind, opts);
    std::vector<Nfa> cut;
    for (std::uint64_t n = 0; n <= 3; ++n) cut.push_back(kind == Kind::B ? cutoff_B(a, n) : cutoff_S(a, n));
    for (size_t n = 0; n + 1 < cut.size(); ++n) {
      if (kind == Kind::B) {
        EXPECT_TRUE(nfa_subset(cut[n], cut[n + 1]));
      } else {
        EXPECT_TRUE(nfa_subset(cut[n + 1], cut[n]));
      }
    }
    for (const auto& w : all_words(a.alphabet, 5)) {
      const std::uint64_t v = oracle::run_value(a, w);
      for (std::uint64_t n = 0; n <= 3; ++n) {
        const bool expected = kind == Kind::B ? v <= n : v > n;
        EXPECT_EQ(oracle::accepts(cut[n], w), expected) << dump_automaton(a) << a.alphabet.render(w) << " n=" << n;
      }
    }
  }
}

TEST(Property, MonoidIsAHomomorphism) {
  std::mt19937_64 rng(403);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_counter_automaton(rng, Kind::OmegaB);
    const auto m = TransitionMonoid::of(a);
    const Nfa n = strip(a);
    for (int j = 0; j < 20; ++j) {
      const Word u = random_word(rng, a.alphabet, 4);
      const Word v = random_word(rng, a.alphabet, 4);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      EXPECT_EQ(m.image(uv), m.multiply(m.image(u), m.image(v)));
      if (!uv.empty()) EXPECT_EQ(oracle::as_set(m.element(m.image(uv))), oracle::word_relation(n, uv));
    }
  }
}

TEST(Property, UpDecompositionIsALinkedPairForTheWord) {
  std::mt19937_64 rng(405);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_counter_automaton(rng, Kind::OmegaS);
    const auto m = TransitionMonoid::of(a);
    for (int j = 0; j < 10; ++j) {
      UPWord u{random_word(rng, a.alphabet, 3), random_word(rng, a.alphabet, 3)};
      if (u.period.empty()) u.period = {0};
      const auto d = up_decomposition(u, m);
      EXPECT_TRUE(is_linked_pair(m, d.t));
      Word first = u.prefix;
      const Word block = repeat(u.period, d.m);
      first.insert(first.end(), block.begin(), block.end());
      EXPECT_EQ(m.image(first), d.t.s);
      EXPECT_EQ(m.image(block), d.t.e);
      EXPECT_TRUE(m.is_idempotent(d.t.e));
    }
  }
}

TEST(Property, JsonRoundTrip) {
  std::mt19937_64 rng(407);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_counter_automaton(rng, static_cast<Kind>(i % 4));
    EXPECT_EQ(load_counter_automaton(dump_automaton(a)), a);
    const auto b = random_buchi(rng);
    EXPECT_EQ(load_buchi(dump_automaton(b)), b);
    const Nfa n = strip(a);
    EXPECT_EQ(load_nfa(dump_automaton(n)), n);
  }
}

TEST(Property, EpsilonEliminationKeepsTheUnderlyingLanguage) {
  std::mt19937_64 rng(409);
  RandomOptions opts;
  opts.epsilon_density = 0.4;
  for (int i = 0; i < 40; ++i) {
    const auto a = random_counter_automaton(rng, i % 2 == 0 ? Kind::B : Kind::S, opts);
    const auto e = eliminate_epsilon(a);
    for (const auto& t : e.transitions) EXPECT_NE(t.label, kEpsilon);
    for (const auto& w : all_words(a.alphabet, 5)) {
      if (w.empty()) continue;
      EXPECT_EQ(oracle::accepts(strip(e), w), oracle::accepts(strip(a), w)) << dump_automaton(a);
    }
  }
}

TEST(Property, ProfiniteSeparatorsOnRandomDisjointPairs) {
  std::mt19937_64 rng(411);
  RandomOptions opts;
  opts.max_states = 3;
  opts.max_counters = 1;
  int separated = 0;
  for (int i = 0; i < 80; ++i) {
    const Kind kind = i % 2 == 0 ? Kind::B : Kind::S;
    const auto m1 = random_counter_automaton(rng, kind, opts);
    const auto m2 = random_counter_automaton(rng, kind, opts);
    if (!is_disjoint_T(m1, m2)) {
      if (kind == Kind::B) {
        EXPECT_THROW(separator_B(m1, m2), NotDisjoint);
      } else {
        EXPECT_THROW(separator_S(m1, m2), NotDisjoint);
      }
      continue;
    }
    ++separated;
    Nfa r;
    if (kind == Kind::B) {
      r = separator_B(m1, m2);
      EXPECT_TRUE(is_empty_B(restrict_profinite(m2, r)));
      EXPECT_TRUE(is_empty_B(restrict_profinite(m1, nfa_complement(r))));
    } else {
      const auto s = separator_S(m1, m2);
      r = s.nfa;
      EXPECT_TRUE(is_empty_S(restrict_profinite(m2, r)));
      EXPECT_TRUE(is_empty_S(restrict_profinite(m1, nfa_complement(r))));
      // R is the complement of the words on which m2 exceeds n0.
      for (const auto& w : all_words(m1.alphabet, 5)) {
        const std::uint64_t v = oracle::run_value(m2, w);
        EXPECT_EQ(oracle::accepts(r, w), !(v > s.n0)) << dump_automaton(m2) << m1.alphabet.render(w);
      }
    }
  }
  EXPECT_GT(separated, 10);
}

TEST(Property, OmegaSeparatorsOnRandomDisjointPairs) {
  std::mt19937_64 rng(413);
  RandomOptions opts;
  opts.max_states = 3;
  opts.max_counters = 1;
  opts.at_least_one_counter = true;
  int separated = 0;
  for (int i = 0; i < 40; ++i) {
    const Kind kind = i % 2 == 0 ? Kind::OmegaB : Kind::OmegaS;
    const auto a1 = random_counter_automaton(rng, kind, opts);
    const auto a2 = random_counter_automaton(rng, kind, opts);
    if (!omega_is_empty(intersect_omegaT(a1, a2))) {
      EXPECT_THROW(separator_omega(a1, a2), NotDisjoint);
      continue;
    }
    ++separated;
    const auto result = separator_omega(a1, a2);
    const auto report = verify_separation(a1, a2, result.sep, &result.certificate, {2, 3, 0});
    EXPECT_TRUE(report.passed()) << dump_automaton(a1) << dump_automaton(a2) << report.to_json().dump(2);
  }
  EXPECT_GT(separated, 5);
}
