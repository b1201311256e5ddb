#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "omegasep/harness.hpp"
#include "omegasep/monoid.hpp"
#include "oracles.hpp"

using namespace omegasep;

namespace {

const Alphabet kAB({"a", "b"});

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word random_word(std::mt19937_64& rng, int max_len) {
  const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  Word out;
  for (int i = 0; i < len; ++i) out.push_back(std::uniform_int_distribution<int>(0, 1)(rng));
  return out;
}

CounterAutomaton one_state(bool a_loop, bool b_loop) {
  std::vector<EdgeSpec> edges;
  if (a_loop) edges.push_back({"p", "a", {}, "p"});
  if (b_loop) edges.push_back({"p", "b", {}, "p"});
  return make_counter_automaton(Kind::OmegaB, {"a", "b"}, {"p"}, {"p"}, {}, edges);
}

void expect_associative(const TransitionMonoid& m) {
  ASSERT_LE(m.size(), 64U);
  const auto n = static_cast<ElementId>(m.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        ASSERT_EQ(m.multiply(m.multiply(x, y), z), m.multiply(x, m.multiply(y, z)));
      }
    }
  }
}

}  // namespace

TEST(TransitionMonoid, SingleStateWithAllLoopsIsTrivial) {
  const auto m = TransitionMonoid::of(one_state(true, true));
  EXPECT_EQ(m.size(), 1U);
  EXPECT_EQ(m.letter(0), m.neutral());
}

TEST(TransitionMonoid, SingleEdgeGivesThreeElements) {
  const auto a = make_counter_automaton(Kind::OmegaB, {"a", "b"}, {"p", "q"}, {"p"}, {}, {{"p", "a", {}, "q"}});
  const auto m = TransitionMonoid::of(a);
  ASSERT_EQ(m.size(), 3U);
  const ElementId ha = m.letter(0);
  EXPECT_EQ(oracle::as_set(m.element(ha)), (std::set<std::pair<int, int>>{{0, 1}}));
  const ElementId haa = m.multiply(ha, ha);
  EXPECT_TRUE(m.element(haa).empty());
  EXPECT_EQ(m.letter(1), haa);
}

TEST(TransitionMonoid, Fig1LetterB) {
  const auto a = fixtures::fig1();
  const auto m = TransitionMonoid::of(a);
  EXPECT_EQ(h_image(m, {}), m.neutral());
  // states: qI = 0, qM = 1
  EXPECT_EQ(oracle::as_set(m.element(h_image(m, kAB.parse("b")))),
            (std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(TransitionMonoid, HomomorphismOnFig1) {
  const auto a = fixtures::fig1();
  const auto m = TransitionMonoid::of(a);
  const Nfa n = strip(a);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(rng, 4);
    const Word v = random_word(rng, 4);
    const Word uv = concat(u, v);
    EXPECT_EQ(h_image(m, uv), m.multiply(h_image(m, u), h_image(m, v)));
    EXPECT_EQ(oracle::as_set(m.element(h_image(m, uv))), oracle::word_relation(n, uv));
  }
}

TEST(TransitionMonoid, ElementsMatchSimulationWithSilentMoves) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_counter_automaton(rng, Kind::B);
    const auto m = TransitionMonoid::of(a);
    const Nfa n = strip(a);
    for (ElementId x = 0; x < static_cast<ElementId>(m.size()); ++x) {
      if (m.witness(x).empty()) {
        // h maps the empty word to the identity so that it is a monoid morphism.
        EXPECT_EQ(m.element(x), Relation::identity(n.num_states()));
      } else {
        EXPECT_EQ(oracle::as_set(m.element(x)), oracle::word_relation(n, m.witness(x)));
      }
      if (m.realized_nonempty(x)) {
        EXPECT_FALSE(m.nonempty_witness(x)->empty());
        EXPECT_EQ(m.image(*m.nonempty_witness(x)), x);
      }
    }
  }
}

TEST(TransitionMonoid, AssociativityOnFixturesAndRandomAutomata) {
  for (const auto& f : fixtures::all()) expect_associative(TransitionMonoid::of(f.automaton));
  std::mt19937_64 rng(47);
  for (int i = 0; i < 30; ++i) {
    const auto m = TransitionMonoid::of(random_counter_automaton(rng, Kind::OmegaB));
    if (m.size() <= 64) expect_associative(m);
  }
}

TEST(TransitionMonoid, SizeGuard) {
  std::mt19937_64 rng(53);
  RandomOptions opts;
  opts.max_states = 6;
  opts.alphabet_size = 3;
  bool thrown = false;
  for (int i = 0; i < 50 && !thrown; ++i) {
    try {
      TransitionMonoid::of(random_counter_automaton(rng, Kind::B, opts), 2);
    } catch (const SizeGuardExceeded&) {
      thrown = true;
    }
  }
  EXPECT_TRUE(thrown);
}

TEST(LinkedPairs, TrivialMonoid) {
  const auto m = TransitionMonoid::of(one_state(true, true));
  const auto pairs = linked_pairs(m);
  ASSERT_EQ(pairs.size(), 1U);
  EXPECT_EQ(pairs[0], (LinkedPair{m.neutral(), m.neutral()}));
}

TEST(LinkedPairs, TwoElementMonoid) {
  const auto m = TransitionMonoid::of(one_state(true, false));
  ASSERT_EQ(m.size(), 2U);
  const ElementId z = m.letter(1);
  EXPECT_EQ(m.multiply(z, z), z);
  EXPECT_EQ(idempotent_exponent(m, z), 1);
  const auto pairs = linked_pairs(m);
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), LinkedPair{z, z}), pairs.end());
  // Exhaustive scan of the definition.
  std::set<LinkedPair> expected;
  for (ElementId s = 0; s < 2; ++s) {
    for (ElementId e = 0; e < 2; ++e) {
      if (m.realized_nonempty(s) && m.realized_nonempty(e) && m.multiply(s, e) == s && m.multiply(e, e) == e) {
        expected.insert({s, e});
      }
    }
  }
  EXPECT_EQ(std::set<LinkedPair>(pairs.begin(), pairs.end()), expected);
}

TEST(LinkedPairs, EquationsHoldOnRandomAutomata) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 30; ++i) {
    const auto m = TransitionMonoid::of(random_counter_automaton(rng, Kind::OmegaS));
    for (const auto& t : linked_pairs(m)) {
      EXPECT_EQ(m.multiply(t.s, t.e), t.s);
      EXPECT_EQ(m.multiply(t.e, t.e), t.e);
      EXPECT_TRUE(is_linked_pair(m, t));
    }
    for (ElementId x = 0; x < static_cast<ElementId>(m.size()); ++x) {
      const int k = idempotent_exponent(m, x);
      EXPECT_TRUE(m.is_idempotent(power(m, x, k)));
      for (int j = 1; j < k; ++j) EXPECT_FALSE(m.is_idempotent(power(m, x, j)));
    }
  }
}

TEST(CoherentPairs, TrivialSecondMonoid) {
  const auto m1 = TransitionMonoid::of(fixtures::fig1());
  const auto m2 = TransitionMonoid::of(one_state(true, true));
  const auto pairs = coherent_pairs(m1, m2);
  std::set<LinkedPair> firsts;
  for (const auto& c : pairs) {
    EXPECT_EQ(c.t2, (LinkedPair{m2.neutral(), m2.neutral()}));
    firsts.insert(c.t1);
  }
  const auto l1 = linked_pairs(m1);
  EXPECT_EQ(firsts, std::set<LinkedPair>(l1.begin(), l1.end()));
}

TEST(CoherentPairs, WitnessesReverify) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    const auto m1 = TransitionMonoid::of(random_counter_automaton(rng, Kind::OmegaB));
    const auto m2 = TransitionMonoid::of(random_counter_automaton(rng, Kind::OmegaB));
    for (const auto& c : coherent_pairs(m1, m2)) {
      EXPECT_FALSE(c.w_e.empty());
      EXPECT_EQ(m1.image(c.w_s), c.t1.s);
      EXPECT_EQ(m2.image(c.w_s), c.t2.s);
      EXPECT_EQ(m1.image(c.w_e), c.t1.e);
      EXPECT_EQ(m2.image(c.w_e), c.t2.e);
      EXPECT_TRUE(is_linked_pair(m1, c.t1));
      EXPECT_TRUE(is_linked_pair(m2, c.t2));
    }
  }
}

TEST(CoherentPairs, SameAutomatonGivesDiagonal) {
  const auto m = TransitionMonoid::of(fixtures::fig1());
  const auto pairs = coherent_pairs(m, m);
  for (const auto& t : linked_pairs(m)) {
    const bool found = std::any_of(pairs.begin(), pairs.end(), [&](const CoherentWitness& c) { return c.t1 == t && c.t2 == t; });
    EXPECT_TRUE(found);
  }
  for (const auto& c : pairs) EXPECT_EQ(c.t1, c.t2);
}

TEST(CoherentPairs, MatchesBruteForceWordSearch) {
  // Automata over disjoint effective letters: a-loop only, b-loop only.
  const auto m1 = TransitionMonoid::of(one_state(true, false));
  const auto m2 = TransitionMonoid::of(one_state(false, true));
  const int bound = static_cast<int>(m1.size() * m2.size()) + 1;
  std::set<std::pair<ElementId, ElementId>> all_images, nonempty_images;
  for (const auto& x : all_words(kAB, bound)) {
    all_images.emplace(m1.image(x), m2.image(x));
    if (!x.empty()) nonempty_images.emplace(m1.image(x), m2.image(x));
  }
  std::set<std::pair<LinkedPair, LinkedPair>> expected;
  for (const auto& [s1, s2] : nonempty_images) {
    for (const auto& [e1, e2] : nonempty_images) {
      const LinkedPair t1{s1, e1}, t2{s2, e2};
      if (is_linked_pair(m1, t1) && is_linked_pair(m2, t2)) expected.insert({t1, t2});
    }
  }
  std::set<std::pair<LinkedPair, LinkedPair>> got;
  for (const auto& c : coherent_pairs(m1, m2)) got.insert({c.t1, c.t2});
  EXPECT_EQ(got, expected);
  // (1,1) in M1 would need a non-empty word avoiding b and a at once.
  EXPECT_FALSE(nonempty_images.count({m1.neutral(), m2.neutral()}));
}

TEST(UpDecomposition, IdempotentLetter) {
  const auto m = TransitionMonoid::of(one_state(true, false));
  const auto d = up_decomposition(make_up_word(kAB, "", "a"), m);
  EXPECT_EQ(d.t, (LinkedPair{m.letter(0), m.letter(0)}));
  EXPECT_EQ(d.m, 1);
}

TEST(UpDecomposition, Fig1AbOmega) {
  const auto m = TransitionMonoid::of(fixtures::fig1());
  const auto d = up_decomposition(make_up_word(kAB, "", "ab"), m);
  const ElementId hab = m.image(kAB.parse("ab"));
  EXPECT_EQ(d.t.e, power(m, hab, d.m));
  EXPECT_TRUE(m.is_idempotent(d.t.e));
  EXPECT_EQ(m.multiply(d.t.s, d.t.e), d.t.s);
}

TEST(UpDecomposition, BlocksRealizeTheType) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    const auto m = TransitionMonoid::of(random_counter_automaton(rng, Kind::OmegaB));
    for (const auto& u : up_grid(kAB, 2, 3)) {
      const auto d = up_decomposition(u, m);
      Word first = u.prefix;
      for (int j = 0; j < d.j; ++j) first = concat(first, u.period);
      Word block;
      for (int j = 0; j < d.m; ++j) block = concat(block, u.period);
      ASSERT_GE(d.m, 1);
      EXPECT_EQ(m.image(first), d.t.s);
      EXPECT_EQ(m.image(block), d.t.e);
      EXPECT_TRUE(is_linked_pair(m, d.t));
      // first block followed by y^m blocks spells x y^omega
      for (size_t k = 0; k < first.size() + 3 * block.size(); ++k) {
        const SymbolId expected = u.at(k);
        const SymbolId got = k < first.size() ? first[k] : block[(k - first.size()) % block.size()];
        EXPECT_EQ(got, expected);
      }
    }
  }
}
