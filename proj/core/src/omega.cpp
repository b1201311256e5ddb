#include "omegasep/omega.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "omegasep/effects.hpp"
#include "omegasep/io.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/values.hpp"

namespace omegasep {

namespace {

using Graph = std::vector<std::vector<StateId>>;

// Tarjan's algorithm over the states marked in `active`. Returns the
// component id of every active state (-1 otherwise) and the number of
// components.
std::pair<std::vector<int>, int> strongly_connected(const Graph& g, const std::vector<bool>& active) {
  const size_t n = g.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  int counter = 0;
  int comps = 0;
  for (size_t root = 0; root < n; ++root) {
    if (!active[root] || index[root] >= 0) continue;
    std::vector<std::pair<StateId, size_t>> call{{static_cast<StateId>(root), 0}};
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<StateId>(root));
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      const auto& succ = g[static_cast<size_t>(v)];
      if (i < succ.size()) {
        StateId w = succ[i++];
        if (!active[static_cast<size_t>(w)]) continue;
        if (index[static_cast<size_t>(w)] < 0) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
        continue;
      }
      StateId done = v;
      call.pop_back();
      if (!call.empty()) {
        StateId parent = call.back().first;
        low[static_cast<size_t>(parent)] = std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(done)]);
      }
      if (low[static_cast<size_t>(done)] == index[static_cast<size_t>(done)]) {
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<size_t>(w)] = false;
          comp[static_cast<size_t>(w)] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return {comp, comps};
}

std::vector<bool> forward_reach(const Graph& g, const std::vector<StateId>& roots) {
  std::vector<bool> seen(g.size(), false);
  std::vector<StateId> stack;
  for (StateId r : roots) {
    if (!seen[static_cast<size_t>(r)]) {
      seen[static_cast<size_t>(r)] = true;
      stack.push_back(r);
    }
  }
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (StateId r : g[static_cast<size_t>(q)]) {
      if (!seen[static_cast<size_t>(r)]) {
        seen[static_cast<size_t>(r)] = true;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

Graph successor_graph(const BuchiAutomaton& b) {
  Graph g(static_cast<size_t>(b.num_states()));
  for (const auto& t : b.transitions) g[static_cast<size_t>(t.src)].push_back(t.dst);
  return g;
}

// Marks states lying in a reachable non-trivial component that meets every
// acceptance set.
std::vector<bool> good_components(const BuchiAutomaton& b, const Graph& g, const std::vector<bool>& reach) {
  auto [comp, count] = strongly_connected(g, reach);
  std::vector<bool> nontrivial(static_cast<size_t>(count), false);
  for (const auto& t : b.transitions) {
    if (reach[static_cast<size_t>(t.src)] && comp[static_cast<size_t>(t.src)] == comp[static_cast<size_t>(t.dst)]) {
      nontrivial[static_cast<size_t>(comp[static_cast<size_t>(t.src)])] = true;
    }
  }
  std::vector<bool> good = nontrivial;
  for (const auto& set : b.acceptance) {
    std::vector<bool> hit(static_cast<size_t>(count), false);
    for (StateId q : set) {
      if (reach[static_cast<size_t>(q)]) hit[static_cast<size_t>(comp[static_cast<size_t>(q)])] = true;
    }
    for (int c = 0; c < count; ++c) good[static_cast<size_t>(c)] = good[static_cast<size_t>(c)] && hit[static_cast<size_t>(c)];
  }
  std::vector<bool> out(g.size(), false);
  for (size_t q = 0; q < g.size(); ++q) {
    if (reach[q] && good[static_cast<size_t>(comp[q])]) out[q] = true;
  }
  return out;
}

// Shortest path (as a word) from any of `from` to `to`, moving only inside
// `allowed`, using at least one transition when `nonempty`.
std::optional<Word> path_word(const BuchiAutomaton& b, const std::vector<StateId>& from, StateId to,
                              const std::vector<bool>& allowed, bool nonempty) {
  const size_t n = static_cast<size_t>(b.num_states());
  std::vector<std::vector<const NfaTransition*>> out(n);
  for (const auto& t : b.transitions) out[static_cast<size_t>(t.src)].push_back(&t);
  std::vector<const NfaTransition*> via(n, nullptr);
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue;
  for (StateId f : from) {
    if (!nonempty && f == to) return Word{};
    if (!seen[static_cast<size_t>(f)]) {
      seen[static_cast<size_t>(f)] = true;
      queue.push_back(f);
    }
  }
  // In the non-empty case the target may itself be a source; allow it to be
  // reached again through a transition.
  bool target_source = nonempty && seen[static_cast<size_t>(to)];
  if (target_source) seen[static_cast<size_t>(to)] = false;
  const NfaTransition* last = nullptr;
  while (!queue.empty() && !last) {
    StateId q = queue.front();
    queue.pop_front();
    for (const NfaTransition* t : out[static_cast<size_t>(q)]) {
      if (!allowed[static_cast<size_t>(t->dst)]) continue;
      if (t->dst == to) {
        last = t;
        break;
      }
      if (seen[static_cast<size_t>(t->dst)]) continue;
      seen[static_cast<size_t>(t->dst)] = true;
      via[static_cast<size_t>(t->dst)] = t;
      queue.push_back(t->dst);
    }
  }
  if (!last) return std::nullopt;
  Word w{last->label};
  for (StateId q = last->src; via[static_cast<size_t>(q)] != nullptr; q = via[static_cast<size_t>(q)]->src) {
    w.push_back(via[static_cast<size_t>(q)]->label);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<bool> state_mask(const std::vector<StateId>& states, int n) {
  std::vector<bool> mask(static_cast<size_t>(n), false);
  for (StateId q : states) mask[static_cast<size_t>(q)] = true;
  return mask;
}

}  // namespace

// ------------------------------------------------------------------ Buchi

bool buchi_is_empty(const BuchiAutomaton& b) {
  Graph g = successor_graph(b);
  auto reach = forward_reach(g, b.initial);
  auto good = good_components(b, g, reach);
  return std::none_of(good.begin(), good.end(), [](bool x) { return x; });
}

std::optional<UPWord> buchi_lasso(const BuchiAutomaton& b) {
  Graph g = successor_graph(b);
  auto reach = forward_reach(g, b.initial);
  auto good = good_components(b, g, reach);
  auto it = std::find(good.begin(), good.end(), true);
  if (it == good.end()) return std::nullopt;
  StateId q = static_cast<StateId>(it - good.begin());
  auto [comp, count] = strongly_connected(g, reach);
  std::vector<bool> inside(good.size(), false);
  for (size_t p = 0; p < good.size(); ++p) inside[p] = reach[p] && comp[p] == comp[static_cast<size_t>(q)];
  std::vector<bool> all(good.size(), true);
  UPWord u;
  u.prefix = *path_word(b, b.initial, q, all, false);
  // Visit one state of every acceptance set, then come back to q.
  StateId at = q;
  for (const auto& set : b.acceptance) {
    StateId target = -1;
    for (StateId f : set) {
      if (inside[static_cast<size_t>(f)]) {
        target = f;
        break;
      }
    }
    auto leg = path_word(b, {at}, target, inside, false);
    u.period.insert(u.period.end(), leg->begin(), leg->end());
    at = target;
  }
  auto back = path_word(b, {at}, q, inside, u.period.empty());
  u.period.insert(u.period.end(), back->begin(), back->end());
  return u;
}

bool buchi_up_membership(const BuchiAutomaton& b, const UPWord& u) {
  return !buchi_is_empty(buchi_intersect(b, up_safety(u, b.alphabet)));
}

BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "buchi_union");
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  const StateId offset = a.num_states();
  for (const auto& s : a.states) out.states.push_back("L." + s);
  for (const auto& s : b.states) out.states.push_back("R." + s);
  out.initial = a.initial;
  for (StateId q : b.initial) out.initial.push_back(q + offset);
  out.transitions = a.transitions;
  for (const auto& t : b.transitions) out.transitions.push_back({t.src + offset, t.label, t.dst + offset});
  const size_t sets = std::max(a.acceptance.size(), b.acceptance.size());
  for (size_t i = 0; i < sets; ++i) {
    std::vector<StateId> set;
    if (i < a.acceptance.size()) {
      set = a.acceptance[i];
    } else {
      for (StateId q = 0; q < a.num_states(); ++q) set.push_back(q);
    }
    if (i < b.acceptance.size()) {
      for (StateId q : b.acceptance[i]) set.push_back(q + offset);
    } else {
      for (StateId q = 0; q < b.num_states(); ++q) set.push_back(q + offset);
    }
    out.acceptance.push_back(std::move(set));
  }
  return out;
}

BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "buchi_intersect");
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  std::vector<std::vector<std::vector<StateId>>> bs(static_cast<size_t>(b.num_states()),
                                                    std::vector<std::vector<StateId>>(static_cast<size_t>(b.alphabet.size())));
  for (const auto& t : b.transitions) bs[static_cast<size_t>(t.src)][static_cast<size_t>(t.label)].push_back(t.dst);
  std::vector<std::vector<const NfaTransition*>> as(static_cast<size_t>(a.num_states()));
  for (const auto& t : a.transitions) as[static_cast<size_t>(t.src)].push_back(&t);
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = index.try_emplace({p, q}, static_cast<StateId>(work.size()));
    if (inserted) {
      work.emplace_back(p, q);
      out.states.push_back("(" + a.states[static_cast<size_t>(p)] + "," + b.states[static_cast<size_t>(q)] + ")");
    }
    return it->second;
  };
  for (StateId p : a.initial) {
    for (StateId q : b.initial) out.initial.push_back(intern(p, q));
  }
  for (size_t i = 0; i < work.size(); ++i) {
    auto [p, q] = work[i];
    for (const NfaTransition* t : as[static_cast<size_t>(p)]) {
      for (StateId q2 : bs[static_cast<size_t>(q)][static_cast<size_t>(t->label)]) {
        out.transitions.push_back({static_cast<StateId>(i), t->label, intern(t->dst, q2)});
      }
    }
  }
  auto lift = [&](const std::vector<StateId>& set, bool left, int n) {
    auto mask = state_mask(set, n);
    std::vector<StateId> lifted;
    for (size_t i = 0; i < work.size(); ++i) {
      StateId s = left ? work[i].first : work[i].second;
      if (mask[static_cast<size_t>(s)]) lifted.push_back(static_cast<StateId>(i));
    }
    return lifted;
  };
  for (const auto& set : a.acceptance) out.acceptance.push_back(lift(set, true, a.num_states()));
  for (const auto& set : b.acceptance) out.acceptance.push_back(lift(set, false, b.num_states()));
  if (out.acceptance.empty()) {
    std::vector<StateId> all;
    for (StateId q = 0; q < out.num_states(); ++q) all.push_back(q);
    out.acceptance.push_back(all);
  }
  return out;
}

BuchiAutomaton degeneralize(const BuchiAutomaton& b) {
  if (b.acceptance.size() <= 1) return b;
  const int k = static_cast<int>(b.acceptance.size());
  std::vector<std::vector<bool>> in(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) in[static_cast<size_t>(i)] = state_mask(b.acceptance[static_cast<size_t>(i)], b.num_states());
  std::vector<std::vector<const NfaTransition*>> out_edges(static_cast<size_t>(b.num_states()));
  for (const auto& t : b.transitions) out_edges[static_cast<size_t>(t.src)].push_back(&t);
  BuchiAutomaton out;
  out.alphabet = b.alphabet;
  std::map<std::pair<StateId, int>, StateId> index;
  std::vector<std::pair<StateId, int>> work;
  auto intern = [&](StateId q, int i) {
    auto [it, inserted] = index.try_emplace({q, i}, static_cast<StateId>(work.size()));
    if (inserted) {
      work.emplace_back(q, i);
      out.states.push_back("(" + b.states[static_cast<size_t>(q)] + "," + std::to_string(i) + ")");
    }
    return it->second;
  };
  for (StateId q : b.initial) out.initial.push_back(intern(q, 0));
  for (size_t s = 0; s < work.size(); ++s) {
    auto [q, i] = work[s];
    int next = in[static_cast<size_t>(i)][static_cast<size_t>(q)] ? (i + 1) % k : i;
    for (const NfaTransition* t : out_edges[static_cast<size_t>(q)]) {
      out.transitions.push_back({static_cast<StateId>(s), t->label, intern(t->dst, next)});
    }
  }
  std::vector<StateId> accepting;
  for (size_t s = 0; s < work.size(); ++s) {
    if (work[s].second == 0 && in[0][static_cast<size_t>(work[s].first)]) accepting.push_back(static_cast<StateId>(s));
  }
  out.acceptance = {accepting};
  return out;
}

BuchiAutomaton buchi_empty(const Alphabet& alphabet) {
  BuchiAutomaton b;
  b.alphabet = alphabet;
  b.states = {"empty"};
  b.initial = {0};
  b.acceptance = {{0}};
  return b;
}

BuchiAutomaton buchi_trim(const BuchiAutomaton& b) {
  Graph g = successor_graph(b);
  auto reach = forward_reach(g, b.initial);
  auto good = good_components(b, g, reach);
  Graph rev(g.size());
  for (const auto& t : b.transitions) rev[static_cast<size_t>(t.dst)].push_back(t.src);
  std::vector<StateId> roots;
  for (size_t q = 0; q < good.size(); ++q) {
    if (good[q]) roots.push_back(static_cast<StateId>(q));
  }
  if (roots.empty()) return buchi_empty(b.alphabet);
  auto coreach = forward_reach(rev, roots);
  std::vector<bool> keep(g.size());
  for (size_t q = 0; q < g.size(); ++q) keep[q] = reach[q] && coreach[q];
  return restrict_states(b, keep);
}

// -------------------------------------------------------- counter automata

BuchiAutomaton closure_automaton(const CounterAutomaton& a) {
  if (a.kind != Kind::OmegaB) throw KindMismatch("closure_automaton: expected an wB automaton");
  const int k = a.num_counters();
  if (k > 31) throw SizeGuardExceeded("closure_automaton: more than 31 counters");
  std::vector<std::vector<const CounterTransition*>> out_edges(static_cast<size_t>(a.num_states()));
  for (const auto& t : a.transitions) out_edges[static_cast<size_t>(t.src)].push_back(&t);
  auto resets = [&](const CounterTransition& t) {
    std::uint32_t r = 0;
    for (int c = 0; c < k; ++c) {
      if (t.ops[static_cast<size_t>(c)] == CounterOp::Reset) r |= std::uint32_t{1} << c;
    }
    return r;
  };
  // Macro steps from q: silent moves followed by one letter, with the union
  // of counters reset on the way.
  std::map<StateId, std::set<std::tuple<SymbolId, StateId, std::uint32_t>>> steps_cache;
  auto steps = [&](StateId q) -> const std::set<std::tuple<SymbolId, StateId, std::uint32_t>>& {
    auto it = steps_cache.find(q);
    if (it != steps_cache.end()) return it->second;
    std::set<std::tuple<SymbolId, StateId, std::uint32_t>> result;
    std::set<std::pair<StateId, std::uint32_t>> seen{{q, 0}};
    std::vector<std::pair<StateId, std::uint32_t>> stack{{q, 0}};
    while (!stack.empty()) {
      auto [p, r] = stack.back();
      stack.pop_back();
      for (const CounterTransition* t : out_edges[static_cast<size_t>(p)]) {
        std::uint32_t nr = r | resets(*t);
        if (t->label == kEpsilon) {
          if (seen.emplace(t->dst, nr).second) stack.emplace_back(t->dst, nr);
        } else {
          result.emplace(t->label, t->dst, nr);
        }
      }
    }
    return steps_cache.emplace(q, std::move(result)).first->second;
  };
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  std::map<std::pair<StateId, std::uint32_t>, StateId> index;
  std::vector<std::pair<StateId, std::uint32_t>> work;
  auto intern = [&](StateId q, std::uint32_t r) {
    auto [it, inserted] = index.try_emplace({q, r}, static_cast<StateId>(work.size()));
    if (inserted) {
      work.emplace_back(q, r);
      std::string name = a.states[static_cast<size_t>(q)];
      if (k > 0) {
        name += "/{";
        bool first = true;
        for (int c = 0; c < k; ++c) {
          if (!((r >> c) & 1U)) continue;
          if (!first) name += ",";
          first = false;
          name += a.counters[static_cast<size_t>(c)];
        }
        name += "}";
      }
      out.states.push_back(name);
    }
    return it->second;
  };
  for (StateId q : a.initial) out.initial.push_back(intern(q, 0));
  for (size_t i = 0; i < work.size(); ++i) {
    StateId q = work[i].first;
    for (const auto& [label, dst, r] : steps(q)) out.transitions.push_back({static_cast<StateId>(i), label, intern(dst, r)});
  }
  if (k == 0) {
    std::vector<StateId> all;
    for (StateId q = 0; q < out.num_states(); ++q) all.push_back(q);
    out.acceptance = {all};
  } else {
    for (int c = 0; c < k; ++c) {
      std::vector<StateId> set;
      for (size_t i = 0; i < work.size(); ++i) {
        if ((work[i].second >> c) & 1U) set.push_back(static_cast<StateId>(i));
      }
      out.acceptance.push_back(set);
    }
  }
  return out;
}

CounterAutomaton buchi_to_omegaT(const BuchiAutomaton& b, Kind kind) {
  if (kind != Kind::OmegaB && kind != Kind::OmegaS) throw KindMismatch("buchi_to_omegaT: expected kind wB or wS");
  BuchiAutomaton d = degeneralize(b);
  auto accepting = state_mask(d.acceptance.at(0), d.num_states());
  CounterAutomaton out;
  out.kind = kind;
  out.alphabet = d.alphabet;
  out.states = d.states;
  out.initial = d.initial;
  out.counters = {"f"};
  for (const auto& t : d.transitions) {
    bool enters = accepting[static_cast<size_t>(t.dst)];
    if (kind == Kind::OmegaB) {
      out.transitions.push_back({t.src, t.label, {enters ? CounterOp::Reset : CounterOp::Nil}, t.dst});
    } else {
      out.transitions.push_back({t.src, t.label, {CounterOp::Inc}, t.dst});
      if (enters) out.transitions.push_back({t.src, t.label, {CounterOp::Reset}, t.dst});
    }
  }
  return out;
}

CounterAutomaton intersect_omegaT(const CounterAutomaton& a1, const CounterAutomaton& a2) {
  if (!is_omega(a1.kind) || a1.kind != a2.kind) throw KindMismatch("intersect_omegaT: expected two automata of the same omega kind");
  return counter_product(a1, a2);
}

bool omega_is_empty(const CounterAutomaton& a) {
  if (a.kind == Kind::OmegaB) return buchi_is_empty(closure_automaton(a));
  if (a.kind != Kind::OmegaS) throw KindMismatch("omega_is_empty: expected an wB or wS automaton");
  auto summary = summarize_effects(a, true);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (summary.reach[static_cast<size_t>(q)].empty()) continue;
    for (auto v : summary.loops[static_cast<size_t>(q)].items()) {
      if (omega_good(v, a.num_counters())) return false;
    }
  }
  return true;
}

bool omega_is_empty_by_types(const CounterAutomaton& a) {
  if (!is_omega(a.kind)) throw KindMismatch("omega_is_empty_by_types: expected an wB or wS automaton");
  auto m = TransitionMonoid::of(a);
  for (const auto& t : linked_pairs(m)) {
    auto mt = build_M_t(a, m, t);
    for (const auto& part : mt.parts) {
      if (!is_empty_T(part.automaton)) return false;
    }
  }
  return true;
}

bool up_membership(const CounterAutomaton& a, const TransitionMonoid& m, const UPWord& u) {
  auto dec = up_decomposition(u, m);
  Word block;
  for (int i = 0; i < dec.m; ++i) block.insert(block.end(), u.period.begin(), u.period.end());
  Nfa blocks = nfa_word_plus(a.alphabet, block);
  auto mt = build_M_t(a, m, dec.t);
  for (const auto& part : mt.parts) {
    if (!is_empty_T(restrict_profinite(part.automaton, blocks))) return true;
  }
  return false;
}

bool up_membership(const CounterAutomaton& a, const UPWord& u, MembershipRoute route) {
  if (!is_omega(a.kind)) throw KindMismatch("up_membership: expected an wB or wS automaton");
  switch (route) {
    case MembershipRoute::Reduction: return up_membership(a, TransitionMonoid::of(a), u);
    case MembershipRoute::SafetyProduct: return !omega_is_empty(product_safety(a, up_safety(u, a.alphabet)));
    case MembershipRoute::Closure:
      if (a.kind != Kind::OmegaB) throw KindMismatch("up_membership: the closure route applies to wB automata only");
      return buchi_up_membership(closure_automaton(a), u);
  }
  return false;
}

// --------------------------------------------------------------- separator

BuchiAutomaton build_S_t1t2(const LinkedPair& t1, const LinkedPair& t2, const TransitionMonoid& m1,
                            const TransitionMonoid& m2, const Nfa& r) {
  require_same_alphabet(m1.alphabet(), m2.alphabet(), "build_S_t1t2");
  require_same_alphabet(m1.alphabet(), r.alphabet, "build_S_t1t2");
  Nfa dfa = minimize(r);
  if (dfa.num_states() > 64) throw SizeGuardExceeded("build_S_t1t2: separator DFA has more than 64 states");
  const int letters = dfa.alphabet.size();
  std::vector<StateId> delta(static_cast<size_t>(dfa.num_states() * letters));
  for (const auto& t : dfa.transitions) delta[static_cast<size_t>(t.src * letters + t.label)] = t.dst;
  std::uint64_t accepting = 0;
  for (StateId f : dfa.finals) accepting |= std::uint64_t{1} << f;
  const std::uint64_t start = std::uint64_t{1} << dfa.initial.front();
  auto advance = [&](std::uint64_t set, SymbolId a) {
    std::uint64_t next = 0;
    while (set) {
      int d = __builtin_ctzll(set);
      set &= set - 1;
      next |= std::uint64_t{1} << delta[static_cast<size_t>(d * letters + a)];
    }
    return next;
  };

  // (m1, m2, first block, after N, tracked R-states, just cut)
  using Key = std::tuple<ElementId, ElementId, bool, bool, std::uint64_t, bool>;
  BuchiAutomaton out;
  out.alphabet = m1.alphabet();
  std::map<Key, StateId> index;
  std::vector<Key> work;
  auto intern = [&](const Key& key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(work.size()));
    if (inserted) {
      work.push_back(key);
      const auto& [x1, x2, first, marked, tracked, cut] = key;
      char buf[64];
      std::snprintf(buf, sizeof buf, "(m%d,m%d,%s,%s,%llx%s)", x1, x2, first ? "0" : "+", marked ? "N" : "-",
                    static_cast<unsigned long long>(tracked), cut ? ",cut" : "");
      out.states.emplace_back(buf);
    }
    return it->second;
  };
  out.initial = {intern(Key{m1.neutral(), m2.neutral(), true, false, 0, false})};
  std::vector<StateId> acc;
  for (size_t i = 0; i < work.size(); ++i) {
    const auto [x1, x2, first, marked, tracked, cut] = work[i];
    if (cut && marked) acc.push_back(static_cast<StateId>(i));
    const StateId from = static_cast<StateId>(i);
    for (SymbolId a = 0; a < out.alphabet.size(); ++a) {
      ElementId n1 = m1.multiply(x1, m1.letter(a));
      ElementId n2 = m2.multiply(x2, m2.letter(a));
      std::uint64_t nt = marked ? advance(tracked, a) : 0;
      out.transitions.push_back({from, a, intern(Key{n1, n2, first, marked, nt, false})});
      bool closes = first ? (n1 == t1.s && n2 == t2.s) : (n1 == t1.e && n2 == t2.e);
      if (!closes) continue;
      if (!marked) {
        out.transitions.push_back({from, a, intern(Key{m1.neutral(), m2.neutral(), false, false, 0, true})});
        out.transitions.push_back({from, a, intern(Key{m1.neutral(), m2.neutral(), false, true, start, true})});
      } else if ((nt & ~accepting) == 0) {
        out.transitions.push_back({from, a, intern(Key{m1.neutral(), m2.neutral(), false, true, nt | start, true})});
      }
    }
  }
  out.acceptance = {acc};
  return out;
}

std::string stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string input_hash(const CounterAutomaton& a1, const CounterAutomaton& a2) {
  return stable_hash(dump_automaton(a1) + dump_automaton(a2));
}

void require_omega_disjoint(const CounterAutomaton& a1, const CounterAutomaton& a2, const char* context) {
  auto product = intersect_omegaT(a1, a2);
  if (omega_is_empty(product)) return;
  std::optional<UPWord> witness;
  if (product.kind == Kind::OmegaB) {
    witness = buchi_lasso(closure_automaton(product));
  } else {
    auto words = all_words(a1.alphabet, 3);
    for (const auto& x : words) {
      for (const auto& y : words) {
        if (y.empty() || witness) continue;
        UPWord u{x, y};
        if (up_membership(product, u, MembershipRoute::SafetyProduct)) witness = u;
      }
    }
  }
  std::string msg = std::string(context) + ": the languages intersect";
  if (witness) {
    msg += ", witness " + a1.alphabet.render(witness->prefix) + "(" + a1.alphabet.render(witness->period) + ")^w";
    throw NotDisjoint(msg, a1.alphabet.names_of(witness->prefix), a1.alphabet.names_of(witness->period), true);
  }
  throw NotDisjoint(msg);
}

OmegaSeparator separator_omega(const CounterAutomaton& a1, const CounterAutomaton& a2) {
  if (!is_omega(a1.kind) || a1.kind != a2.kind) throw KindMismatch("separator_omega: expected two automata of the same omega kind");
  require_same_alphabet(a1.alphabet, a2.alphabet, "separator_omega");
  require_omega_disjoint(a1, a2, "separator_omega");

  OmegaSeparator result;
  result.certificate.kind = a1.kind;
  result.certificate.input_hash = input_hash(a1, a2);
  auto m1 = TransitionMonoid::of(a1);
  auto m2 = TransitionMonoid::of(a2);
  auto pairs = coherent_pairs(m1, m2);
  result.certificate.coherent_pairs = static_cast<int>(pairs.size());

  struct Side {
    CounterAutomaton language;
    int parts = 0;
    bool empty = true;
  };
  auto side = [](std::map<LinkedPair, Side>& cache, const CounterAutomaton& a, const TransitionMonoid& m,
                 const LinkedPair& t) -> const Side& {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    auto mt = build_M_t(a, m, t);
    Side s{mt_union(mt, a), static_cast<int>(mt.parts.size()), true};
    s.empty = mt.parts.empty() || is_empty_T(s.language);
    return cache.emplace(t, std::move(s)).first->second;
  };
  std::map<LinkedPair, Side> cache1, cache2;

  BuchiAutomaton sep = buchi_empty(a1.alphabet);
  bool any = false;
  for (const auto& pair : pairs) {
    const Side& s1 = side(cache1, a1, m1, pair.t1);
    if (s1.empty) continue;
    const Side& s2 = side(cache2, a2, m2, pair.t2);
    CertificatePair cert{pair.t1, pair.t2, pair.w_s, pair.w_e, {}, 0, s1.parts, s2.parts, 0};
    Nfa r;
    if (a1.kind == Kind::OmegaB) {
      r = separator_B(s1.language, s2.language);
    } else {
      auto res = separator_S(s1.language, s2.language);
      r = std::move(res.nfa);
      cert.n0 = res.n0;
    }
    cert.r = minimize(r);
    BuchiAutomaton component = buchi_trim(build_S_t1t2(pair.t1, pair.t2, m1, m2, cert.r));
    bool nonempty = !buchi_is_empty(component);
    cert.component_states = nonempty ? component.num_states() : 0;
    result.certificate.pairs.push_back(std::move(cert));
    if (!nonempty) continue;
    sep = any ? buchi_union(sep, component) : component;
    any = true;
  }
  result.sep = buchi_trim(sep);
  result.certificate.separator_hash = stable_hash(dump_automaton(result.sep));
  return result;
}

BuchiAutomaton separator_omega_direct(const CounterAutomaton& a1, const CounterAutomaton& a2) {
  if (a1.kind != Kind::OmegaB || a2.kind != Kind::OmegaB) throw KindMismatch("separator_omega_direct: expected two wB automata");
  require_omega_disjoint(a1, a2, "separator_omega_direct");
  return closure_automaton(a1);
}

}  // namespace omegasep
