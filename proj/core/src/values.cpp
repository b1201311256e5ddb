#include "omegasep/values.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace omegasep {

namespace {

void require_finite_kind(const CounterAutomaton& a, const char* context) {
  if (a.kind != Kind::B && a.kind != Kind::S) {
    throw KindMismatch(std::string(context) + ": expected a B- or S-automaton, got " + std::string(kind_tag(a.kind)));
  }
}

struct Config {
  StateId state;
  std::vector<std::uint64_t> counters;
  friend auto operator<=>(const Config&, const Config&) = default;
};

// Dynamic programming over configurations. `worse(x, y)` tells whether
// aggregate x is dominated by y; `on_reset` folds a reset value into the
// aggregate.
template <typename Better, typename Fold>
std::map<Config, ExtNat> run_dp(const CounterAutomaton& a, const Word& w, ExtNat start, Better better, Fold fold) {
  std::vector<std::vector<const CounterTransition*>> eps(static_cast<size_t>(a.num_states()));
  std::vector<std::vector<std::vector<const CounterTransition*>>> letters(
      static_cast<size_t>(a.num_states()),
      std::vector<std::vector<const CounterTransition*>>(static_cast<size_t>(a.alphabet.size())));
  for (const auto& t : a.transitions) {
    if (t.label == kEpsilon) eps[static_cast<size_t>(t.src)].push_back(&t);
    else letters[static_cast<size_t>(t.src)][static_cast<size_t>(t.label)].push_back(&t);
  }
  auto apply = [&](const Config& c, ExtNat agg, const CounterTransition& t) {
    Config next{t.dst, c.counters};
    for (size_t i = 0; i < t.ops.size(); ++i) {
      switch (t.ops[i]) {
        case CounterOp::Nil: break;
        case CounterOp::Inc: ++next.counters[i]; break;
        case CounterOp::Reset:
          agg = fold(agg, ExtNat(next.counters[i]));
          next.counters[i] = 0;
          break;
      }
    }
    return std::make_pair(std::move(next), agg);
  };
  auto relax = [&](std::map<Config, ExtNat>& into, const Config& c, ExtNat agg) {
    auto [it, inserted] = into.try_emplace(c, agg);
    if (inserted) return true;
    if (better(agg, it->second)) {
      it->second = agg;
      return true;
    }
    return false;
  };
  auto close = [&](std::map<Config, ExtNat>& layer) {
    std::deque<Config> work;
    for (const auto& [c, agg] : layer) work.push_back(c);
    while (!work.empty()) {
      Config c = std::move(work.front());
      work.pop_front();
      ExtNat agg = layer.at(c);
      for (const CounterTransition* t : eps[static_cast<size_t>(c.state)]) {
        auto [next, nagg] = apply(c, agg, *t);
        if (relax(layer, next, nagg)) work.push_back(std::move(next));
      }
    }
  };
  std::map<Config, ExtNat> layer;
  for (StateId q : a.initial) relax(layer, Config{q, std::vector<std::uint64_t>(static_cast<size_t>(a.num_counters()), 0)}, start);
  close(layer);
  for (SymbolId x : w) {
    if (x < 0 || x >= a.alphabet.size()) throw ForeignSymbol("symbol id " + std::to_string(x) + " outside alphabet");
    std::map<Config, ExtNat> next_layer;
    for (const auto& [c, agg] : layer) {
      for (const CounterTransition* t : letters[static_cast<size_t>(c.state)][static_cast<size_t>(x)]) {
        auto [next, nagg] = apply(c, agg, *t);
        relax(next_layer, next, nagg);
      }
    }
    close(next_layer);
    layer = std::move(next_layer);
  }
  return layer;
}

}  // namespace

ExtNat value_B(const CounterAutomaton& a, const Word& w) {
  if (a.kind != Kind::B) require_finite_kind(a, "value_B");
  auto layer = run_dp(
      a, w, ExtNat(0), [](ExtNat x, ExtNat y) { return x < y; }, [](ExtNat agg, ExtNat v) { return std::max(agg, v); });
  ExtNat best = ExtNat::infinity();
  for (const auto& [c, agg] : layer) {
    if (a.is_final(c.state)) best = std::min(best, agg);
  }
  return best;
}

ExtNat value_S(const CounterAutomaton& a, const Word& w) {
  if (a.kind != Kind::S) require_finite_kind(a, "value_S");
  auto layer = run_dp(
      a, w, ExtNat::infinity(), [](ExtNat x, ExtNat y) { return x > y; },
      [](ExtNat agg, ExtNat v) { return std::min(agg, v); });
  ExtNat best = ExtNat(0);
  for (const auto& [c, agg] : layer) {
    if (a.is_final(c.state)) best = std::max(best, agg);
  }
  return best;
}

ExtNat value_of(const CounterAutomaton& a, const Word& w) {
  require_finite_kind(a, "value_of");
  return a.kind == Kind::B ? value_B(a, w) : value_S(a, w);
}

namespace {

// Shared cutoff construction: counter values are capped at n + 1 and
// `reset_ok(v)` decides whether a reset from capped value v is allowed.
Nfa cutoff(const CounterAutomaton& a, std::uint64_t n, const std::function<bool(std::uint64_t)>& reset_ok) {
  require_finite_kind(a, "cutoff");
  const std::uint64_t cap = n + 1;
  std::vector<std::vector<const CounterTransition*>> out(static_cast<size_t>(a.num_states()));
  for (const auto& t : a.transitions) out[static_cast<size_t>(t.src)].push_back(&t);
  Nfa nfa;
  nfa.alphabet = a.alphabet;
  std::map<Config, StateId> index;
  std::vector<Config> configs;
  auto intern = [&](const Config& c) {
    auto [it, inserted] = index.try_emplace(c, static_cast<StateId>(configs.size()));
    if (inserted) {
      configs.push_back(c);
      std::string name = "(" + a.states[static_cast<size_t>(c.state)];
      for (auto v : c.counters) name += "," + std::to_string(v);
      nfa.states.push_back(name + ")");
    }
    return it->second;
  };
  for (StateId q : a.initial) {
    nfa.initial.push_back(intern(Config{q, std::vector<std::uint64_t>(static_cast<size_t>(a.num_counters()), 0)}));
  }
  for (size_t i = 0; i < configs.size(); ++i) {
    Config c = configs[i];
    for (const CounterTransition* t : out[static_cast<size_t>(c.state)]) {
      Config next{t->dst, c.counters};
      bool ok = true;
      for (size_t k = 0; k < t->ops.size() && ok; ++k) {
        switch (t->ops[k]) {
          case CounterOp::Nil: break;
          case CounterOp::Inc: next.counters[k] = std::min(cap, next.counters[k] + 1); break;
          case CounterOp::Reset:
            ok = reset_ok(next.counters[k]);
            next.counters[k] = 0;
            break;
        }
      }
      if (!ok) continue;
      nfa.transitions.push_back({static_cast<StateId>(i), t->label, intern(next)});
    }
  }
  for (size_t i = 0; i < configs.size(); ++i) {
    if (a.is_final(configs[i].state)) nfa.finals.push_back(static_cast<StateId>(i));
  }
  return nfa;
}

}  // namespace

Nfa cutoff_B(const CounterAutomaton& a, std::uint64_t n) {
  return cutoff(a, n, [n](std::uint64_t v) { return v <= n; });
}

Nfa cutoff_S(const CounterAutomaton& a, std::uint64_t n) {
  return cutoff(a, n, [n](std::uint64_t v) { return v == n + 1; });
}

std::vector<Word> all_words(const Alphabet& alphabet, int max_len) {
  std::vector<Word> out{Word{}};
  size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (SymbolId a = 0; a < alphabet.size(); ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

std::map<Word, ExtNat> enumerate_values(const CounterAutomaton& a, int max_len, std::uint64_t budget) {
  require_finite_kind(a, "enumerate_values");
  const bool is_b = a.kind == Kind::B;
  std::vector<std::vector<const CounterTransition*>> out(static_cast<size_t>(a.num_states()));
  for (const auto& t : a.transitions) out[static_cast<size_t>(t.src)].push_back(&t);
  std::map<Word, ExtNat> values;
  for (const Word& w : all_words(a.alphabet, max_len)) values[w] = is_b ? ExtNat::infinity() : ExtNat(0);
  std::uint64_t steps = 0;
  std::vector<std::uint64_t> counters(static_cast<size_t>(a.num_counters()), 0);
  std::vector<ResetEvent> resets;
  Word word;
  // Depth-first walk over all runs; each run prefix ending in a final state
  // contributes its own value to the word read so far.
  std::function<void(StateId)> walk = [&](StateId q) {
    if (++steps > budget) throw SizeGuardExceeded("enumerate_values: run budget exhausted");
    if (a.is_final(q)) {
      ExtNat v = is_b ? ExtNat(0) : ExtNat::infinity();
      for (const auto& r : resets) {
        v = is_b ? std::max(v, ExtNat(static_cast<std::uint64_t>(r.value)))
                 : std::min(v, ExtNat(static_cast<std::uint64_t>(r.value)));
      }
      ExtNat& slot = values[word];
      slot = is_b ? std::min(slot, v) : std::max(slot, v);
    }
    for (const CounterTransition* t : out[static_cast<size_t>(q)]) {
      if (t->label != kEpsilon && static_cast<int>(word.size()) >= max_len) continue;
      auto saved = counters;
      size_t saved_resets = resets.size();
      for (size_t k = 0; k < t->ops.size(); ++k) {
        if (t->ops[k] == CounterOp::Inc) ++counters[k];
        if (t->ops[k] == CounterOp::Reset) {
          resets.push_back({static_cast<CounterId>(k), 0, static_cast<int>(counters[k])});
          counters[k] = 0;
        }
      }
      if (t->label != kEpsilon) word.push_back(t->label);
      walk(t->dst);
      if (t->label != kEpsilon) word.pop_back();
      counters = std::move(saved);
      resets.resize(saved_resets);
    }
  };
  for (StateId q : a.initial) walk(q);
  return values;
}

}  // namespace omegasep
