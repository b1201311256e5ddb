#pragma once

// Brute-force reference implementations used only by the tests. They walk
// runs and subsets directly and share no code with the library algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "omegasep/automaton.hpp"
#include "omegasep/monoid.hpp"

namespace oracle {

using omegasep::CounterAutomaton;
using omegasep::CounterOp;
using omegasep::Kind;
using omegasep::Nfa;
using omegasep::Word;

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

/// Value of w by enumerating every accepting run: B takes the min over runs
/// of the max reset value, S the max over runs of the min reset value.
inline std::uint64_t run_value(const CounterAutomaton& a, const Word& w) {
  const bool is_b = a.kind == Kind::B;
  const size_t k = a.counters.size();
  std::uint64_t best = is_b ? kInf : 0;
  std::function<void(int, int, std::vector<std::uint64_t>&, std::uint64_t)> walk =
      [&](int pos, int q, std::vector<std::uint64_t>& vals, std::uint64_t agg) {
        if (static_cast<size_t>(pos) == w.size() && a.is_final(q)) {
          best = is_b ? std::min(best, agg) : std::max(best, agg);
        }
        for (const auto& t : a.transitions) {
          if (t.src != q) continue;
          const bool silent = t.label == omegasep::kEpsilon;
          if (!silent && (static_cast<size_t>(pos) >= w.size() || w[static_cast<size_t>(pos)] != t.label)) continue;
          std::vector<std::uint64_t> next = vals;
          std::uint64_t next_agg = agg;
          for (size_t c = 0; c < k; ++c) {
            if (t.ops[c] == CounterOp::Inc) ++next[c];
            if (t.ops[c] == CounterOp::Reset) {
              next_agg = is_b ? std::max(next_agg, next[c]) : std::min(next_agg, next[c]);
              next[c] = 0;
            }
          }
          walk(silent ? pos : pos + 1, t.dst, next, next_agg);
        }
      };
  for (int i : a.initial) {
    std::vector<std::uint64_t> vals(k, 0);
    walk(0, i, vals, is_b ? 0 : kInf);
  }
  return best;
}

/// Subset simulation of an NFA with silent moves.
inline bool accepts(const Nfa& n, const Word& w) {
  std::set<int> cur(n.initial.begin(), n.initial.end());
  auto close = [&](std::set<int> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& t : n.transitions) {
        if (t.label == omegasep::kEpsilon && s.count(t.src) && s.insert(t.dst).second) grew = true;
      }
    }
    return s;
  };
  cur = close(cur);
  for (auto x : w) {
    std::set<int> next;
    for (const auto& t : n.transitions) {
      if (t.label == x && cur.count(t.src)) next.insert(t.dst);
    }
    cur = close(next);
  }
  return std::any_of(n.finals.begin(), n.finals.end(), [&](int f) { return cur.count(f) > 0; });
}

/// State-pair relation of a word, computed by simulation from every state.
inline std::set<std::pair<int, int>> word_relation(const Nfa& n, const Word& w) {
  std::set<std::pair<int, int>> rel;
  for (int p = 0; p < n.num_states(); ++p) {
    Nfa probe = n;
    probe.initial = {p};
    for (int q = 0; q < n.num_states(); ++q) {
      probe.finals = {q};
      if (accepts(probe, w)) rel.emplace(p, q);
    }
  }
  return rel;
}

/// Acceptance of x y^omega by a generalized Buchi automaton, via transitive
/// closure of the product with word positions: some reachable cycle must meet
/// every acceptance set.
inline bool buchi_accepts(const omegasep::BuchiAutomaton& b, const omegasep::UPWord& u) {
  const int len = static_cast<int>(u.prefix.size() + u.period.size());
  const int n = b.num_states() * len;
  auto node = [&](int q, int pos) { return q * len + pos; };
  auto next_pos = [&](int pos) { return pos + 1 < len ? pos + 1 : static_cast<int>(u.prefix.size()); };
  std::vector<std::vector<bool>> reach(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
  for (const auto& t : b.transitions) {
    for (int pos = 0; pos < len; ++pos) {
      if (u.at(static_cast<size_t>(pos)) == t.label) reach[static_cast<size_t>(node(t.src, pos))][static_cast<size_t>(node(t.dst, next_pos(pos)))] = true;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[static_cast<size_t>(i)][static_cast<size_t>(k)])
        for (int j = 0; j < n; ++j)
          if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)]) reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
  for (int v = 0; v < n; ++v) {
    if (!reach[static_cast<size_t>(v)][static_cast<size_t>(v)]) continue;
    bool reachable = false;
    for (int q0 : b.initial) reachable = reachable || node(q0, 0) == v || reach[static_cast<size_t>(node(q0, 0))][static_cast<size_t>(v)];
    if (!reachable) continue;
    bool all_sets = true;
    for (const auto& set : b.acceptance) {
      bool met = false;
      for (int w = 0; w < n && !met; ++w) {
        const bool same_scc = reach[static_cast<size_t>(v)][static_cast<size_t>(w)] && reach[static_cast<size_t>(w)][static_cast<size_t>(v)];
        met = same_scc && std::find(set.begin(), set.end(), w / len) != set.end();
      }
      all_sets = all_sets && met;
    }
    if (all_sets) return true;
  }
  return false;
}

inline std::set<std::pair<int, int>> as_set(const omegasep::Relation& r) {
  auto pairs = r.pairs();
  return {pairs.begin(), pairs.end()};
}

}  // namespace oracle
