#include "omegasep/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace omegasep {

namespace {

struct Adjacency {
  std::vector<std::vector<StateId>> eps;
  // letters[q][a] = successors
  std::vector<std::vector<std::vector<StateId>>> letters;

  explicit Adjacency(const Nfa& n)
      : eps(static_cast<size_t>(n.num_states())),
        letters(static_cast<size_t>(n.num_states()),
                std::vector<std::vector<StateId>>(static_cast<size_t>(n.alphabet.size()))) {
    for (const auto& t : n.transitions) {
      if (t.label == kEpsilon) eps[static_cast<size_t>(t.src)].push_back(t.dst);
      else letters[static_cast<size_t>(t.src)][static_cast<size_t>(t.label)].push_back(t.dst);
    }
  }
};

std::vector<StateId> closure_with(const Adjacency& adj, std::vector<StateId> set) {
  std::vector<bool> seen(adj.eps.size(), false);
  std::vector<StateId> stack;
  for (StateId q : set) {
    if (!seen[static_cast<size_t>(q)]) {
      seen[static_cast<size_t>(q)] = true;
      stack.push_back(q);
    }
  }
  std::vector<StateId> out;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    out.push_back(q);
    for (StateId r : adj.eps[static_cast<size_t>(q)]) {
      if (!seen[static_cast<size_t>(r)]) {
        seen[static_cast<size_t>(r)] = true;
        stack.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string subset_name(const Nfa& n, const std::vector<StateId>& set) {
  std::string s = "{";
  for (size_t i = 0; i < set.size(); ++i) {
    if (i) s += ",";
    s += n.states[static_cast<size_t>(set[i])];
  }
  return s + "}";
}

}  // namespace

std::vector<StateId> epsilon_closure(const Nfa& n, const std::vector<StateId>& from) {
  return closure_with(Adjacency(n), from);
}

Nfa determinize(const Nfa& n, bool complete, size_t guard) {
  Adjacency adj(n);
  Nfa out;
  out.alphabet = n.alphabet;
  std::map<std::vector<StateId>, StateId> index;
  std::vector<std::vector<StateId>> subsets;
  auto intern = [&](const std::vector<StateId>& set) {
    auto [it, inserted] = index.try_emplace(set, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= guard) {
        throw SizeGuardExceeded("determinize: more than " + std::to_string(guard) + " subset states");
      }
      subsets.push_back(set);
      out.states.push_back(subset_name(n, set));
    }
    return it->second;
  };
  out.initial = {intern(closure_with(adj, n.initial))};
  std::vector<bool> is_final(static_cast<size_t>(n.num_states()), false);
  for (StateId f : n.finals) is_final[static_cast<size_t>(f)] = true;
  for (size_t i = 0; i < subsets.size(); ++i) {
    for (SymbolId a = 0; a < n.alphabet.size(); ++a) {
      std::vector<StateId> next;
      for (StateId q : subsets[i]) {
        const auto& succ = adj.letters[static_cast<size_t>(q)][static_cast<size_t>(a)];
        next.insert(next.end(), succ.begin(), succ.end());
      }
      if (next.empty() && !complete) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      StateId to = intern(closure_with(adj, next));
      out.transitions.push_back({static_cast<StateId>(i), a, to});
    }
  }
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (std::any_of(subsets[i].begin(), subsets[i].end(), [&](StateId q) { return is_final[static_cast<size_t>(q)]; })) {
      out.finals.push_back(static_cast<StateId>(i));
    }
  }
  return out;
}

bool is_deterministic(const Nfa& n) {
  if (n.initial.size() != 1) return false;
  std::set<std::pair<StateId, SymbolId>> seen;
  for (const auto& t : n.transitions) {
    if (t.label == kEpsilon) return false;
    if (!seen.emplace(t.src, t.label).second) return false;
  }
  return true;
}

Nfa minimize(const Nfa& n, size_t guard) {
  Nfa d = determinize(n, true, guard);
  const int states = d.num_states();
  const int letters = d.alphabet.size();
  std::vector<StateId> delta(static_cast<size_t>(states * letters), 0);
  for (const auto& t : d.transitions) delta[static_cast<size_t>(t.src * letters + t.label)] = t.dst;
  // Moore refinement: classes start as final / non-final.
  std::vector<int> cls(static_cast<size_t>(states), 0);
  for (StateId f : d.finals) cls[static_cast<size_t>(f)] = 1;
  int num_classes = 0;
  while (true) {
    std::map<std::vector<int>, int> signature;
    std::vector<int> next(static_cast<size_t>(states));
    for (int q = 0; q < states; ++q) {
      std::vector<int> sig{cls[static_cast<size_t>(q)]};
      for (int a = 0; a < letters; ++a) sig.push_back(cls[static_cast<size_t>(delta[static_cast<size_t>(q * letters + a)])]);
      auto [it, inserted] = signature.try_emplace(sig, static_cast<int>(signature.size()));
      next[static_cast<size_t>(q)] = it->second;
    }
    int count = static_cast<int>(signature.size());
    cls = std::move(next);
    if (count == num_classes) break;
    num_classes = count;
  }
  Nfa out;
  out.alphabet = d.alphabet;
  for (int c = 0; c < num_classes; ++c) out.states.push_back("m" + std::to_string(c));
  std::vector<bool> done(static_cast<size_t>(num_classes), false);
  for (int q = 0; q < states; ++q) {
    int c = cls[static_cast<size_t>(q)];
    if (done[static_cast<size_t>(c)]) continue;
    done[static_cast<size_t>(c)] = true;
    for (int a = 0; a < letters; ++a) {
      out.transitions.push_back({c, a, cls[static_cast<size_t>(delta[static_cast<size_t>(q * letters + a)])]});
    }
  }
  out.initial = {cls[static_cast<size_t>(d.initial.front())]};
  std::set<int> finals;
  for (StateId f : d.finals) finals.insert(cls[static_cast<size_t>(f)]);
  out.finals.assign(finals.begin(), finals.end());
  return out;
}

Nfa trim(const Nfa& n) {
  const size_t size = static_cast<size_t>(n.num_states());
  std::vector<std::vector<StateId>> fwd(size), bwd(size);
  for (const auto& t : n.transitions) {
    fwd[static_cast<size_t>(t.src)].push_back(t.dst);
    bwd[static_cast<size_t>(t.dst)].push_back(t.src);
  }
  auto sweep = [&](const std::vector<StateId>& roots, const std::vector<std::vector<StateId>>& g) {
    std::vector<bool> seen(size, false);
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
  };
  auto reach = sweep(n.initial, fwd);
  auto coreach = sweep(n.finals, bwd);
  std::vector<bool> keep(size);
  for (size_t q = 0; q < size; ++q) keep[q] = reach[q] && coreach[q];
  return restrict_states(n, keep);
}

Nfa nfa_intersect(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "nfa_intersect");
  Adjacency adj_a(a), adj_b(b);
  Nfa out;
  out.alphabet = a.alphabet;
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
    StateId from = static_cast<StateId>(i);
    for (StateId p2 : adj_a.eps[static_cast<size_t>(p)]) out.transitions.push_back({from, kEpsilon, intern(p2, q)});
    for (StateId q2 : adj_b.eps[static_cast<size_t>(q)]) out.transitions.push_back({from, kEpsilon, intern(p, q2)});
    for (SymbolId x = 0; x < a.alphabet.size(); ++x) {
      for (StateId p2 : adj_a.letters[static_cast<size_t>(p)][static_cast<size_t>(x)]) {
        for (StateId q2 : adj_b.letters[static_cast<size_t>(q)][static_cast<size_t>(x)]) {
          out.transitions.push_back({from, x, intern(p2, q2)});
        }
      }
    }
  }
  std::vector<bool> fa(static_cast<size_t>(a.num_states()), false), fb(static_cast<size_t>(b.num_states()), false);
  for (StateId f : a.finals) fa[static_cast<size_t>(f)] = true;
  for (StateId f : b.finals) fb[static_cast<size_t>(f)] = true;
  for (size_t i = 0; i < work.size(); ++i) {
    if (fa[static_cast<size_t>(work[i].first)] && fb[static_cast<size_t>(work[i].second)]) {
      out.finals.push_back(static_cast<StateId>(i));
    }
  }
  return out;
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "nfa_union");
  Nfa out = a;
  for (auto& s : out.states) s = "L." + s;
  const StateId offset = a.num_states();
  for (const auto& s : b.states) out.states.push_back("R." + s);
  for (StateId q : b.initial) out.initial.push_back(q + offset);
  for (StateId q : b.finals) out.finals.push_back(q + offset);
  for (const auto& t : b.transitions) out.transitions.push_back({t.src + offset, t.label, t.dst + offset});
  return out;
}

Nfa nfa_complement(const Nfa& n, size_t guard) {
  Nfa d = determinize(n, true, guard);
  std::vector<bool> fin(static_cast<size_t>(d.num_states()), false);
  for (StateId f : d.finals) fin[static_cast<size_t>(f)] = true;
  d.finals.clear();
  for (StateId q = 0; q < d.num_states(); ++q) {
    if (!fin[static_cast<size_t>(q)]) d.finals.push_back(q);
  }
  return d;
}

bool nfa_is_empty(const Nfa& n) { return !nfa_shortest_word(n).has_value(); }

bool nfa_member(const Nfa& n, const Word& w) {
  Adjacency adj(n);
  std::vector<StateId> cur = closure_with(adj, n.initial);
  for (SymbolId a : w) {
    if (a < 0 || a >= n.alphabet.size()) throw ForeignSymbol("nfa_member: symbol outside alphabet");
    std::vector<StateId> next;
    for (StateId q : cur) {
      const auto& succ = adj.letters[static_cast<size_t>(q)][static_cast<size_t>(a)];
      next.insert(next.end(), succ.begin(), succ.end());
    }
    cur = closure_with(adj, next);
    if (cur.empty()) return false;
  }
  std::set<StateId> finals(n.finals.begin(), n.finals.end());
  return std::any_of(cur.begin(), cur.end(), [&](StateId q) { return finals.count(q) > 0; });
}

bool nfa_subset(const Nfa& a, const Nfa& b) { return nfa_is_empty(nfa_intersect(a, nfa_complement(b))); }

bool nfa_equivalent(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "nfa_equivalent");
  return nfa_subset(a, b) && nfa_subset(b, a);
}

std::optional<Word> nfa_shortest_word(const Nfa& n) {
  // 0-1 BFS: silent moves cost nothing.
  const size_t size = static_cast<size_t>(n.num_states());
  std::vector<std::vector<const NfaTransition*>> out(size);
  for (const auto& t : n.transitions) out[static_cast<size_t>(t.src)].push_back(&t);
  std::vector<size_t> dist(size, SIZE_MAX);
  std::vector<const NfaTransition*> via(size, nullptr);
  std::deque<StateId> queue;
  for (StateId q : n.initial) {
    if (dist[static_cast<size_t>(q)] != 0) {
      dist[static_cast<size_t>(q)] = 0;
      queue.push_front(q);
    }
  }
  std::vector<bool> done(size, false);
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (done[static_cast<size_t>(q)]) continue;
    done[static_cast<size_t>(q)] = true;
    for (const NfaTransition* t : out[static_cast<size_t>(q)]) {
      size_t w = t->label == kEpsilon ? 0 : 1;
      size_t nd = dist[static_cast<size_t>(q)] + w;
      if (nd < dist[static_cast<size_t>(t->dst)]) {
        dist[static_cast<size_t>(t->dst)] = nd;
        via[static_cast<size_t>(t->dst)] = t;
        if (w == 0) queue.push_front(t->dst);
        else queue.push_back(t->dst);
      }
    }
  }
  StateId best = -1;
  for (StateId f : n.finals) {
    if (dist[static_cast<size_t>(f)] != SIZE_MAX &&
        (best < 0 || dist[static_cast<size_t>(f)] < dist[static_cast<size_t>(best)])) {
      best = f;
    }
  }
  if (best < 0) return std::nullopt;
  Word w;
  for (StateId q = best; via[static_cast<size_t>(q)] != nullptr; q = via[static_cast<size_t>(q)]->src) {
    if (dist[static_cast<size_t>(q)] == 0 && std::find(n.initial.begin(), n.initial.end(), q) != n.initial.end()) break;
    if (via[static_cast<size_t>(q)]->label != kEpsilon) w.push_back(via[static_cast<size_t>(q)]->label);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Nfa nfa_empty(const Alphabet& alphabet) {
  Nfa n;
  n.alphabet = alphabet;
  n.states = {"z"};
  n.initial = {0};
  return n;
}

Nfa nfa_universal(const Alphabet& alphabet) {
  std::vector<SymbolId> all;
  for (SymbolId a = 0; a < alphabet.size(); ++a) all.push_back(a);
  return nfa_letters_star(alphabet, all);
}

Nfa nfa_word(const Alphabet& alphabet, const Word& w) {
  Nfa n;
  n.alphabet = alphabet;
  for (size_t i = 0; i <= w.size(); ++i) n.states.push_back("w" + std::to_string(i));
  n.initial = {0};
  n.finals = {static_cast<StateId>(w.size())};
  for (size_t i = 0; i < w.size(); ++i) n.transitions.push_back({static_cast<StateId>(i), w[i], static_cast<StateId>(i + 1)});
  return n;
}

Nfa nfa_word_plus(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) throw InvalidArgument("nfa_word_plus: empty word");
  Nfa n = nfa_word(alphabet, w);
  // Close the loop: the last letter may also return to the start.
  n.transitions.push_back({static_cast<StateId>(w.size() - 1), w.back(), 0});
  n.finals = {static_cast<StateId>(w.size())};
  return n;
}

Nfa nfa_letters_star(const Alphabet& alphabet, const std::vector<SymbolId>& letters) {
  Nfa n;
  n.alphabet = alphabet;
  n.states = {"s"};
  n.initial = {0};
  n.finals = {0};
  for (SymbolId a : letters) n.transitions.push_back({0, a, 0});
  return n;
}

Nfa nfa_letters_plus(const Alphabet& alphabet, const std::vector<SymbolId>& letters) {
  Nfa n;
  n.alphabet = alphabet;
  n.states = {"s", "t"};
  n.initial = {0};
  n.finals = {1};
  for (SymbolId a : letters) {
    n.transitions.push_back({0, a, 1});
    n.transitions.push_back({1, a, 1});
  }
  return n;
}

}  // namespace omegasep
