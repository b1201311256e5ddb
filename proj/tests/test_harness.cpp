#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "omegasep/error.hpp"
#include "omegasep/harness.hpp"
#include "omegasep/io.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/values.hpp"
#include "oracles.hpp"

using namespace omegasep;

namespace {

const Alphabet kAB({"a", "b"});

UPWord up(std::string_view x, std::string_view y) { return make_up_word(kAB, x, y); }

bool contains(const std::vector<UPWord>& words, const UPWord& u) {
  return std::find(words.begin(), words.end(), u) != words.end();
}

const CheckResult& check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name);
}

// Shortest word length with S-value above n among words up to max_len,
// found by enumerating runs.
std::optional<size_t> shortest_above(const CounterAutomaton& a, std::uint64_t n, int max_len) {
  for (const auto& w : all_words(a.alphabet, max_len)) {
    const auto v = oracle::run_value(a, w);
    if (v > n) return w.size();
  }
  return std::nullopt;
}

CounterAutomaton everything(Kind kind) {
  return make_counter_automaton(kind, {"a", "b"}, {"p"}, {"p"}, {}, {{"p", "a", {}, "p"}, {"p", "b", {}, "p"}});
}

}  // namespace

TEST(Fixtures, ValidateAndCarryProvenance) {
  for (const auto& f : fixtures::all()) {
    EXPECT_TRUE(validate(f.automaton).empty()) << f.name;
    EXPECT_FALSE(f.provenance.empty()) << f.name;
  }
  for (const auto& f : fixtures::omega_b_catalog()) {
    EXPECT_TRUE(validate(f.automaton).empty()) << f.name;
    EXPECT_FALSE(f.provenance.empty()) << f.name;
  }
  EXPECT_GE(fixtures::omega_pairs(Kind::OmegaB).size(), 6U);
  EXPECT_GE(fixtures::omega_pairs(Kind::OmegaS).size(), 6U);
  EXPECT_GE(fixtures::b_pairs().size(), 10U);
  EXPECT_GE(fixtures::s_pairs().size(), 10U);
}

TEST(RandomAutomata, ReproducibleAndWithinBounds) {
  RandomOptions opts;
  std::mt19937_64 r1(5);
  std::mt19937_64 r2(5);
  for (int i = 0; i < 50; ++i) {
    const Kind kind = static_cast<Kind>(i % 4);
    const auto a = random_counter_automaton(r1, kind, opts);
    EXPECT_EQ(a, random_counter_automaton(r2, kind, opts));
    EXPECT_TRUE(validate(a).empty());
    EXPECT_LE(a.num_states(), opts.max_states);
    EXPECT_LE(a.num_counters(), opts.max_counters);
    EXPECT_EQ(a.kind, kind);
  }
}

TEST(UpGrid, SizeAndOrder) {
  const auto grid = up_grid(kAB, 3, 4);
  EXPECT_EQ(grid.size(), 15U * 30U);
  EXPECT_EQ(grid.front(), up("", "a"));
  for (const auto& u : grid) {
    EXPECT_LE(u.prefix.size(), 3U);
    EXPECT_GE(u.period.size(), 1U);
    EXPECT_LE(u.period.size(), 4U);
  }
}

TEST(SampleUpMembers, Fig1) {
  const auto members = sample_up_members(fixtures::fig1(Kind::OmegaB), 1, 3);
  EXPECT_TRUE(contains(members, up("", "ab")));
  EXPECT_FALSE(contains(members, up("", "a")));
  EXPECT_EQ(members, sample_up_members(fixtures::fig1(Kind::OmegaB), 1, 3, MembershipRoute::Reduction));
}

TEST(SampleUpMembers, EmptyAndFullLanguages) {
  const auto never = make_counter_automaton(Kind::OmegaB, {"a", "b"}, {"p"}, {"p"}, {"c"},
                                            {{"p", "a", {"inc"}, "p"}, {"p", "b", {"nil"}, "p"}});
  EXPECT_TRUE(sample_up_members(never, 2, 3).empty());
  for (const Kind kind : {Kind::OmegaB, Kind::OmegaS}) {
    EXPECT_EQ(sample_up_members(everything(kind), 2, 3), up_grid(kAB, 2, 3));
  }
}

TEST(SampleUpMembers, BudgetIsEnforced) {
  EXPECT_THROW(sample_up_members(fixtures::fig1(Kind::OmegaB), 3, 4, MembershipRoute::SafetyProduct, 10),
               SizeGuardExceeded);
}

TEST(LassoOracle, Examples) {
  const auto a = fixtures::fig1(Kind::OmegaB);
  EXPECT_TRUE(wB_lasso_oracle(a, up("", "ab")));
  EXPECT_FALSE(wB_lasso_oracle(a, up("", "a")));
  EXPECT_TRUE(wB_lasso_oracle(a, up("aab", "b")));
}

TEST(LassoOracle, CounterlessMatchesBuchiCheck) {
  std::mt19937_64 rng(301);
  RandomOptions opts;
  opts.max_counters = 0;
  for (int i = 0; i < 30; ++i) {
    const auto a = random_counter_automaton(rng, Kind::OmegaB, opts);
    BuchiAutomaton b;
    b.alphabet = a.alphabet;
    b.states = a.states;
    b.initial = a.initial;
    std::vector<StateId> all;
    for (StateId q = 0; q < a.num_states(); ++q) all.push_back(q);
    b.acceptance = {all};
    // Fold silent moves into letters: p -e*-> r -x-> q.
    const Nfa n = strip(a);
    for (StateId p = 0; p < a.num_states(); ++p) {
      for (StateId r : epsilon_closure(n, {p})) {
        for (const auto& t : a.transitions) {
          if (t.src == r && t.label != kEpsilon) b.transitions.push_back({p, t.label, t.dst});
        }
      }
    }
    for (const auto& u : up_grid(a.alphabet, 2, 3)) {
      EXPECT_EQ(wB_lasso_oracle(a, u), oracle::buchi_accepts(b, u)) << dump_automaton(a);
    }
  }
}

TEST(LassoOracle, AgreesWithMembershipRoutes) {
  std::mt19937_64 rng(303);
  const auto grid = up_grid(kAB, 2, 3);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_counter_automaton(rng, Kind::OmegaB);
    for (const auto& u : grid) {
      const bool expected = wB_lasso_oracle(a, u);
      EXPECT_EQ(up_membership(a, u, MembershipRoute::Reduction), expected);
      EXPECT_EQ(up_membership(a, u, MembershipRoute::Closure), expected);
    }
  }
}

TEST(GrowthProbe, Fig2GrowsLinearly) {
  const auto probe = growth_probe(fixtures::fig2(), 3);
  const std::vector<std::pair<std::uint64_t, std::size_t>> expected{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  EXPECT_EQ(probe, expected);
}

TEST(GrowthProbe, SingleIncrementStopsAfterZero) {
  const auto probe = growth_probe(fixtures::single_increment(), 3);
  ASSERT_EQ(probe.size(), 1U);
  EXPECT_EQ(probe[0].first, 0U);
}

TEST(GrowthProbe, NoAcceptingRunGivesNothing) { EXPECT_TRUE(growth_probe(fixtures::no_accept_S(), 3).empty()); }

TEST(GrowthProbe, MatchesRunEnumeration) {
  std::mt19937_64 rng(307);
  RandomOptions opts;
  opts.max_states = 3;
  opts.max_counters = 1;
  for (int i = 0; i < 40; ++i) {
    const auto a = random_counter_automaton(rng, Kind::S, opts);
    const auto probe = growth_probe(a, 2);
    for (size_t j = 0; j < probe.size(); ++j) {
      EXPECT_EQ(probe[j].first, j);
      if (j > 0) EXPECT_GE(probe[j].second, probe[j - 1].second);
      if (probe[j].second <= 7) {
        EXPECT_EQ(shortest_above(a, j, 7), std::optional<size_t>(probe[j].second)) << dump_automaton(a);
      }
    }
    if (probe.size() < 3) EXPECT_FALSE(shortest_above(a, probe.size(), 7).has_value()) << dump_automaton(a);
  }
}

TEST(GrowthConsistency, Fixtures) {
  for (const auto& f : fixtures::all()) {
    if (f.automaton.kind != Kind::S) continue;
    const auto g = check_growth_consistency(f.automaton);
    EXPECT_TRUE(g.consistent) << f.name << ": " << g.detail;
  }
  EXPECT_FALSE(check_growth_consistency(fixtures::fig2()).is_empty);
  EXPECT_TRUE(check_growth_consistency(fixtures::single_increment()).is_empty);
}

TEST(MaxValueUpTo, Fig2) {
  EXPECT_EQ(max_value_up_to(fixtures::fig2(), 5), ExtNat(5));
  EXPECT_EQ(max_value_up_to(fixtures::single_increment(), 6), ExtNat(1));
}

class VerifyFig1 : public ::testing::Test {
 protected:
  CounterAutomaton a1 = fixtures::fig1(Kind::OmegaB);
  CounterAutomaton a2 = fixtures::a_omega(Kind::OmegaB);
  OmegaSeparator result = separator_omega(a1, a2);
};

TEST_F(VerifyFig1, AllChecksPass) {
  const auto report = verify_separation(a1, a2, result.sep, &result.certificate);
  EXPECT_TRUE(report.passed()) << report.to_json().dump(2);
  EXPECT_EQ(report.checks.size(), 4U);
  EXPECT_GT(check(report, "first_contained_in_separator").checked, 0U);
}

TEST_F(VerifyFig1, TamperedSeparatorFailsDisjointness) {
  const auto a_loop = make_buchi({"a", "b"}, {"p"}, {"p"}, {{"p", "a", "p"}}, {{"p"}});
  const auto tampered = buchi_union(result.sep, a_loop);
  const auto report = verify_separation(a1, a2, tampered, &result.certificate);
  EXPECT_FALSE(report.passed());
  const auto& disjoint = check(report, "separator_disjoint_from_second");
  EXPECT_FALSE(disjoint.passed);
  EXPECT_NE(disjoint.counterexample.find("(a)^w"), std::string::npos) << disjoint.counterexample;
  EXPECT_FALSE(check(report, "certificate_hashes").passed);
}

TEST_F(VerifyFig1, HashMismatchIsFlagged) {
  auto cert = result.certificate;
  cert.input_hash = "0000000000000000";
  const auto report = verify_separation(a1, a2, result.sep, &cert);
  EXPECT_FALSE(check(report, "certificate_hashes").passed);
  EXPECT_TRUE(check(report, "separator_disjoint_from_second").passed);
}

TEST_F(VerifyFig1, AlteredReplayDataIsFlagged) {
  auto cert = result.certificate;
  ASSERT_FALSE(cert.pairs.empty());
  cert.pairs[0].component_states += 1;
  EXPECT_FALSE(check(verify_separation(a1, a2, result.sep, &cert), "certificate_replay").passed);
}

TEST_F(VerifyFig1, WithoutCertificateOnlyLanguageChecksRun) {
  const auto report = verify_separation(a1, a2, result.sep, nullptr);
  EXPECT_EQ(report.checks.size(), 2U);
  EXPECT_TRUE(report.passed());
}

TEST_F(VerifyFig1, CertificateJsonRoundTrip) {
  const Json doc = certificate_to_json(result.certificate, a1, a2);
  const auto back = certificate_from_json(Json::parse(doc.dump()), a1, a2);
  EXPECT_EQ(back.kind, result.certificate.kind);
  EXPECT_EQ(back.input_hash, result.certificate.input_hash);
  EXPECT_EQ(back.separator_hash, result.certificate.separator_hash);
  EXPECT_EQ(back.coherent_pairs, result.certificate.coherent_pairs);
  ASSERT_EQ(back.pairs.size(), result.certificate.pairs.size());
  for (size_t i = 0; i < back.pairs.size(); ++i) {
    EXPECT_EQ(back.pairs[i].t1, result.certificate.pairs[i].t1);
    EXPECT_EQ(back.pairs[i].t2, result.certificate.pairs[i].t2);
    EXPECT_EQ(back.pairs[i].w_s, result.certificate.pairs[i].w_s);
    EXPECT_EQ(back.pairs[i].w_e, result.certificate.pairs[i].w_e);
    EXPECT_TRUE(nfa_equivalent(back.pairs[i].r, result.certificate.pairs[i].r));
    EXPECT_EQ(back.pairs[i].component_states, result.certificate.pairs[i].component_states);
  }
  EXPECT_TRUE(verify_separation(a1, a2, result.sep, &back).passed());
  EXPECT_THROW(certificate_from_json(Json::parse("{\"kind\": 3}"), a1, a2), ParseError);
}

TEST_F(VerifyFig1, ReportJsonWithoutTimesIsDeterministic) {
  const auto r1 = verify_separation(a1, a2, result.sep, &result.certificate, {3, 4, 9});
  const auto r2 = verify_separation(a1, a2, result.sep, &result.certificate, {3, 4, 9});
  EXPECT_EQ(r1.to_json(false).dump(), r2.to_json(false).dump());
  EXPECT_EQ(r1.to_json(false).dump().find("seconds"), std::string::npos);
  EXPECT_EQ(r1.to_json(false)["seed"], 9);
}

TEST(Verify, CatalogPairsOfBothKinds) {
  for (const Kind kind : {Kind::OmegaB, Kind::OmegaS}) {
    for (const auto& p : fixtures::omega_pairs(kind)) {
      const auto result = separator_omega(p.a1, p.a2);
      const auto report = verify_separation(p.a1, p.a2, result.sep, &result.certificate, {2, 3, 0});
      EXPECT_TRUE(report.passed()) << p.name << "\n" << report.to_json().dump(2);
    }
  }
}
