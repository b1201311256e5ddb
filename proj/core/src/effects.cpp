#include "omegasep/effects.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <functional>
#include <set>

namespace omegasep {

namespace effect {

namespace {

// Counts combine by max: 0 is neutral, 1 + 1 stays bounded, w absorbs.
constexpr int plus(int x, int y) { return x > y ? x : y; }
constexpr bool big(int x) { return x == kOmega; }

}  // namespace

Code compose(Code a, Code b) {
  if (!is_reset(a) && !is_reset(b)) return no_reset(plus(increments(a), increments(b)));
  if (!is_reset(a)) return reset(plus(increments(a), head(b)), large(b), tail(b));
  if (!is_reset(b)) return reset(head(a), large(a), plus(tail(a), increments(b)));
  return reset(head(a), large(a) && large(b) && big(plus(tail(a), head(b))), tail(b));
}

Code stabilize(Code a) {
  if (!is_reset(a)) return increments(a) == kZero ? a : no_reset(kOmega);
  return reset(head(a), large(a) && big(plus(tail(a), head(a))), tail(a));
}

bool leq(Code a, Code b) {
  if (is_reset(a) != is_reset(b)) return false;
  if (!is_reset(a)) return increments(a) <= increments(b);
  return head(a) <= head(b) && (!large(a) || large(b)) && tail(a) <= tail(b);
}

Code of_op(CounterOp op) {
  switch (op) {
    case CounterOp::Nil: return no_reset(kZero);
    case CounterOp::Inc: return no_reset(kOne);
    case CounterOp::Reset: return reset(kZero, true, kZero);
  }
  return no_reset(kZero);
}

std::string to_string(Code c) {
  static const char* kCount[] = {"0", "1", "w"};
  if (!is_reset(c)) return std::string("N(") + kCount[increments(c)] + ")";
  return std::string("R(") + kCount[head(c)] + "," + (large(c) ? "L" : "s") + "," + kCount[tail(c)] + ")";
}

}  // namespace effect

namespace {

void check_counters(int counters) {
  if (counters > EffectVector::kMaxCounters) {
    throw SizeGuardExceeded("effect abstraction supports at most " + std::to_string(EffectVector::kMaxCounters) +
                            " counters");
  }
}

}  // namespace

EffectVector effect_unit() { return EffectVector{}; }

EffectVector effect_of(const std::vector<CounterOp>& ops) {
  check_counters(static_cast<int>(ops.size()));
  EffectVector v;
  for (size_t c = 0; c < ops.size(); ++c) v.set(static_cast<int>(c), effect::of_op(ops[c]));
  return v;
}

EffectVector compose(EffectVector a, EffectVector b, int counters) {
  EffectVector v;
  for (int c = 0; c < counters; ++c) v.set(c, effect::compose(a.at(c), b.at(c)));
  return v;
}

EffectVector stabilize(EffectVector a, int counters) {
  EffectVector v;
  for (int c = 0; c < counters; ++c) v.set(c, effect::stabilize(a.at(c)));
  return v;
}

bool leq(EffectVector a, EffectVector b, int counters) {
  for (int c = 0; c < counters; ++c) {
    if (!effect::leq(a.at(c), b.at(c))) return false;
  }
  return true;
}

std::string to_string(EffectVector v, int counters) {
  std::string s = "[";
  for (int c = 0; c < counters; ++c) {
    if (c) s += " ";
    s += effect::to_string(v.at(c));
  }
  return s + "]";
}

bool finite_good(EffectVector v, int counters) {
  for (int c = 0; c < counters; ++c) {
    effect::Code x = v.at(c);
    if (effect::is_reset(x) && !(effect::head(x) == effect::kOmega && effect::large(x))) return false;
  }
  return true;
}

bool omega_good(EffectVector v, int counters) {
  for (int c = 0; c < counters; ++c) {
    effect::Code x = v.at(c);
    if (!effect::is_reset(x) || !effect::large(x)) return false;
    if (std::max(effect::head(x), effect::tail(x)) != effect::kOmega) return false;
  }
  return true;
}

bool Antichain::insert(EffectVector v, int counters) {
  for (const auto& x : items_) {
    if (leq(v, x, counters)) return false;
  }
  std::erase_if(items_, [&](EffectVector x) { return leq(x, v, counters); });
  items_.push_back(v);
  return true;
}

bool Antichain::insert_all(const Antichain& other, int counters) {
  bool changed = false;
  for (auto v : other.items_) changed |= insert(v, counters);
  return changed;
}

Antichain product(const Antichain& a, const Antichain& b, int counters) {
  Antichain out;
  for (auto x : a.items()) {
    for (auto y : b.items()) out.insert(compose(x, y, counters), counters);
  }
  return out;
}

Antichain star_plus(const Antichain& a, int counters) {
  Antichain t = a;
  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = t.items();
    for (auto x : snapshot) changed |= t.insert(stabilize(x, counters), counters);
    snapshot = t.items();
    for (auto x : snapshot) {
      for (auto y : snapshot) changed |= t.insert(compose(x, y, counters), counters);
    }
  }
  return t;
}

EffectSummary summarize_effects(const CounterAutomaton& a, bool with_loops) {
  const int k = a.num_counters();
  check_counters(k);
  const int n = a.num_states();
  struct Edge {
    StateId dst;
    EffectVector eff;
  };
  std::vector<std::vector<Edge>> out(static_cast<size_t>(n));
  for (const auto& t : a.transitions) out[static_cast<size_t>(t.src)].push_back({t.dst, effect_of(t.ops)});

  // Restrict to states reachable from the initial states.
  std::vector<bool> reachable(static_cast<size_t>(n), false);
  std::vector<StateId> stack;
  for (StateId q : a.initial) {
    if (!reachable[static_cast<size_t>(q)]) {
      reachable[static_cast<size_t>(q)] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (const auto& e : out[static_cast<size_t>(q)]) {
      if (!reachable[static_cast<size_t>(e.dst)]) {
        reachable[static_cast<size_t>(e.dst)] = true;
        stack.push_back(e.dst);
      }
    }
  }

  // Tarjan's algorithm, iterative; components come out in reverse
  // topological order.
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0), comp(static_cast<size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<size_t>(n), false);
  std::vector<std::vector<StateId>> components;
  std::vector<StateId> tstack;
  int counter = 0;
  for (StateId root = 0; root < n; ++root) {
    if (!reachable[static_cast<size_t>(root)] || index[static_cast<size_t>(root)] >= 0) continue;
    std::vector<std::pair<StateId, size_t>> call{{root, 0}};
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
    tstack.push_back(root);
    on_stack[static_cast<size_t>(root)] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < out[static_cast<size_t>(v)].size()) {
        StateId w = out[static_cast<size_t>(v)][i++].dst;
        if (index[static_cast<size_t>(w)] < 0) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          tstack.push_back(w);
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
        std::vector<StateId> c;
        StateId w;
        do {
          w = tstack.back();
          tstack.pop_back();
          on_stack[static_cast<size_t>(w)] = false;
          comp[static_cast<size_t>(w)] = static_cast<int>(components.size());
          c.push_back(w);
        } while (w != done);
        components.push_back(std::move(c));
      }
    }
  }

  EffectSummary summary;
  summary.counters = k;
  summary.reach.assign(static_cast<size_t>(n), Antichain{});
  summary.loops.assign(static_cast<size_t>(n), Antichain{});
  std::vector<Antichain> incoming(static_cast<size_t>(n));
  for (StateId q : a.initial) incoming[static_cast<size_t>(q)].insert(effect_unit(), k);

  for (auto it = components.rbegin(); it != components.rend(); ++it) {
    const auto& c = *it;
    const int cid = comp[static_cast<size_t>(c.front())];
    const size_t m = c.size();
    std::vector<int> local(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < m; ++i) local[static_cast<size_t>(c[i])] = static_cast<int>(i);
    // d[i][j]: effects of non-empty paths inside the component.
    std::vector<Antichain> d(m * m);
    bool cyclic = false;
    for (size_t i = 0; i < m; ++i) {
      for (const auto& e : out[static_cast<size_t>(c[i])]) {
        if (comp[static_cast<size_t>(e.dst)] != cid) continue;
        cyclic = true;
        d[i * m + static_cast<size_t>(local[static_cast<size_t>(e.dst)])].insert(e.eff, k);
      }
    }
    if (cyclic) {
      for (size_t p = 0; p < m; ++p) {
        Antichain star = star_plus(d[p * m + p], k);
        star.insert(effect_unit(), k);
        std::vector<Antichain> col(m), row(m);
        for (size_t i = 0; i < m; ++i) {
          col[i] = product(d[i * m + p], star, k);
          row[i] = d[p * m + i];
        }
        for (size_t i = 0; i < m; ++i) {
          if (col[i].empty()) continue;
          for (size_t j = 0; j < m; ++j) {
            if (row[j].empty()) continue;
            d[i * m + j].insert_all(product(col[i], row[j], k), k);
          }
        }
      }
    }
    for (size_t j = 0; j < m; ++j) {
      Antichain r = incoming[static_cast<size_t>(c[j])];
      for (size_t i = 0; i < m; ++i) {
        if (!incoming[static_cast<size_t>(c[i])].empty() && !d[i * m + j].empty()) {
          r.insert_all(product(incoming[static_cast<size_t>(c[i])], d[i * m + j], k), k);
        }
      }
      summary.reach[static_cast<size_t>(c[j])] = std::move(r);
      if (with_loops && !d[j * m + j].empty()) summary.loops[static_cast<size_t>(c[j])] = star_plus(d[j * m + j], k);
    }
    for (StateId q : c) {
      const auto& rq = summary.reach[static_cast<size_t>(q)];
      if (rq.empty()) continue;
      for (const auto& e : out[static_cast<size_t>(q)]) {
        if (comp[static_cast<size_t>(e.dst)] == cid) continue;
        for (auto v : rq.items()) incoming[static_cast<size_t>(e.dst)].insert(compose(v, e.eff, k), k);
      }
    }
  }
  return summary;
}

namespace {

void normalize(std::vector<EffectVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

EffectMatrix matrix_product(const EffectMatrix& a, const EffectMatrix& b, int counters) {
  EffectMatrix out{a.n, std::vector<std::vector<EffectVector>>(static_cast<size_t>(a.n * a.n))};
  for (int p = 0; p < a.n; ++p) {
    for (int r = 0; r < a.n; ++r) {
      auto& cell = out.entries[static_cast<size_t>(p * a.n + r)];
      for (int q = 0; q < a.n; ++q) {
        for (auto x : a.at(p, q)) {
          for (auto y : b.at(q, r)) cell.push_back(compose(x, y, counters));
        }
      }
      normalize(cell);
    }
  }
  return out;
}

EffectMatrix matrix_stabilize(const EffectMatrix& e, int counters) {
  EffectMatrix out = e;
  for (int q = 0; q < e.n; ++q) {
    std::vector<EffectVector> loops;
    for (auto f : e.at(q, q)) {
      if (compose(f, f, counters) == f) loops.push_back(stabilize(f, counters));
    }
    if (loops.empty()) continue;
    for (int p = 0; p < e.n; ++p) {
      for (int r = 0; r < e.n; ++r) {
        auto& cell = out.entries[static_cast<size_t>(p * e.n + r)];
        for (auto x : e.at(p, q)) {
          for (auto f : loops) {
            auto xf = compose(x, f, counters);
            for (auto y : e.at(q, r)) cell.push_back(compose(xf, y, counters));
          }
        }
      }
    }
  }
  for (auto& cell : out.entries) normalize(cell);
  return out;
}

EffectMatrix silent_matrix(const CounterAutomaton& a) {
  const int n = a.num_states();
  const int k = a.num_counters();
  check_counters(k);
  EffectMatrix s{n, std::vector<std::vector<EffectVector>>(static_cast<size_t>(n * n))};
  std::vector<std::vector<const CounterTransition*>> eps(static_cast<size_t>(n));
  for (const auto& t : a.transitions) {
    if (t.label == kEpsilon) eps[static_cast<size_t>(t.src)].push_back(&t);
  }
  // Memoized over the acyclic silent graph.
  std::vector<bool> done(static_cast<size_t>(n), false);
  std::function<void(StateId)> fill = [&](StateId p) {
    if (done[static_cast<size_t>(p)]) return;
    done[static_cast<size_t>(p)] = true;
    s.entries[static_cast<size_t>(p * n + p)].push_back(effect_unit());
    for (const CounterTransition* t : eps[static_cast<size_t>(p)]) {
      fill(t->dst);
      EffectVector x = effect_of(t->ops);
      for (int q = 0; q < n; ++q) {
        for (auto y : s.at(t->dst, q)) s.entries[static_cast<size_t>(p * n + q)].push_back(compose(x, y, k));
      }
    }
    for (int q = 0; q < n; ++q) normalize(s.entries[static_cast<size_t>(p * n + q)]);
  };
  for (StateId p = 0; p < n; ++p) fill(p);
  return s;
}

std::vector<EffectMatrix> letter_matrices(const CounterAutomaton& a) {
  const int n = a.num_states();
  const int k = a.num_counters();
  EffectMatrix s = silent_matrix(a);
  std::vector<EffectMatrix> out;
  for (SymbolId x = 0; x < a.alphabet.size(); ++x) {
    EffectMatrix m{n, std::vector<std::vector<EffectVector>>(static_cast<size_t>(n * n))};
    for (const auto& t : a.transitions) {
      if (t.label == x) m.entries[static_cast<size_t>(t.src * n + t.dst)].push_back(effect_of(t.ops));
    }
    for (auto& cell : m.entries) normalize(cell);
    out.push_back(matrix_product(matrix_product(s, m, k), s, k));
  }
  return out;
}

std::vector<EffectMatrix> stabilization_closure(const CounterAutomaton& a, size_t guard) {
  // Every element is a product of generators: letter matrices and the
  // stabilizations found so far. Closing under right multiplication by
  // generators therefore closes under all products.
  const int k = a.num_counters();
  std::set<EffectMatrix> seen;
  std::vector<EffectMatrix> all;
  std::vector<size_t> generators;
  std::deque<size_t> work;
  auto add = [&](EffectMatrix m) -> std::optional<size_t> {
    if (!seen.insert(m).second) return std::nullopt;
    if (all.size() >= guard) throw SizeGuardExceeded("stabilization_closure: more than " + std::to_string(guard) + " matrices");
    all.push_back(std::move(m));
    work.push_back(all.size() - 1);
    return all.size() - 1;
  };
  for (auto& m : letter_matrices(a)) {
    EffectMatrix copy = m;
    if (auto id = add(std::move(m))) {
      generators.push_back(*id);
    } else {
      generators.push_back(static_cast<size_t>(std::find(all.begin(), all.end(), copy) - all.begin()));
    }
  }
  while (!work.empty()) {
    const size_t i = work.front();
    work.pop_front();
    for (size_t gi = 0; gi < generators.size(); ++gi) {
      add(matrix_product(all[i], all[generators[gi]], k));
    }
    const EffectMatrix& x = all[i];
    if (matrix_product(x, x, k) != x) continue;
    EffectMatrix st = matrix_stabilize(x, k);
    EffectMatrix copy = st;
    auto id = add(std::move(st));
    const size_t gid = id ? *id : static_cast<size_t>(std::find(all.begin(), all.end(), copy) - all.begin());
    if (std::find(generators.begin(), generators.end(), gid) != generators.end()) continue;
    generators.push_back(gid);
    // Older elements have not been multiplied by the new generator yet.
    const size_t known = all.size();
    for (size_t j = 0; j < known; ++j) {
      add(matrix_product(all[j], all[gid], k));
    }
  }
  return all;
}

}  // namespace omegasep
