#include <benchmark/benchmark.h>

#include <random>

#include "omegasep/harness.hpp"
#include "omegasep/monoid.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/values.hpp"

using namespace omegasep;

namespace {

std::vector<CounterAutomaton> random_batch(Kind kind, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CounterAutomaton> out;
  for (int i = 0; i < count; ++i) out.push_back(random_counter_automaton(rng, kind));
  return out;
}

void BM_ValueS(benchmark::State& state) {
  const auto a = fixtures::fig2();
  Word w;
  for (int i = 0; i < state.range(0); ++i) w.push_back(static_cast<SymbolId>(i % 2));
  for (auto _ : state) benchmark::DoNotOptimize(value_S(a, w));
}
BENCHMARK(BM_ValueS)->Arg(8)->Arg(64)->Arg(512);

void BM_CutoffB(benchmark::State& state) {
  const auto batch = random_batch(Kind::B, 20, 11);
  for (auto _ : state) {
    for (const auto& a : batch) benchmark::DoNotOptimize(cutoff_B(a, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_CutoffB)->Arg(1)->Arg(4)->Arg(16);

void BM_TransitionMonoid(benchmark::State& state) {
  const auto batch = random_batch(Kind::OmegaB, 20, 13);
  for (auto _ : state) {
    for (const auto& a : batch) benchmark::DoNotOptimize(TransitionMonoid::of(a).size());
  }
}
BENCHMARK(BM_TransitionMonoid);

void BM_EmptinessS(benchmark::State& state) {
  const auto batch = random_batch(Kind::S, 20, 17);
  for (auto _ : state) {
    for (const auto& a : batch) benchmark::DoNotOptimize(is_empty_S(a));
  }
}
BENCHMARK(BM_EmptinessS);

void BM_ClosureAutomaton(benchmark::State& state) {
  const auto catalog = fixtures::omega_b_catalog();
  for (auto _ : state) {
    for (const auto& f : catalog) benchmark::DoNotOptimize(closure_automaton(f.automaton).num_states());
  }
}
BENCHMARK(BM_ClosureAutomaton);

void BM_SeparatorOmega(benchmark::State& state) {
  const Kind kind = state.range(0) == 0 ? Kind::OmegaB : Kind::OmegaS;
  const auto pairs = fixtures::omega_pairs(kind);
  for (auto _ : state) {
    for (const auto& p : pairs) benchmark::DoNotOptimize(separator_omega(p.a1, p.a2).sep.num_states());
  }
}
BENCHMARK(BM_SeparatorOmega)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_UpMembership(benchmark::State& state) {
  const auto route = static_cast<MembershipRoute>(state.range(0));
  const auto a = fixtures::fig1(Kind::OmegaB);
  const auto grid = up_grid(a.alphabet, 2, 3);
  for (auto _ : state) {
    for (const auto& u : grid) benchmark::DoNotOptimize(up_membership(a, u, route));
  }
}
BENCHMARK(BM_UpMembership)
    ->Arg(static_cast<int>(MembershipRoute::Reduction))
    ->Arg(static_cast<int>(MembershipRoute::SafetyProduct))
    ->Arg(static_cast<int>(MembershipRoute::Closure));

}  // namespace

BENCHMARK_MAIN();
