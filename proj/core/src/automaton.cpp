#include "omegasep/automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace omegasep {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}

std::optional<SymbolId> Alphabet::find(std::string_view symbol) const {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) return static_cast<SymbolId>(i);
  }
  return std::nullopt;
}

SymbolId Alphabet::index_of(std::string_view symbol) const {
  if (auto i = find(symbol)) return *i;
  throw ForeignSymbol("symbol '" + std::string(symbol) + "' is not in the alphabet");
}

Word Alphabet::parse(std::string_view text) const {
  bool single_char = std::all_of(symbols_.begin(), symbols_.end(),
                                 [](const std::string& s) { return s.size() == 1; });
  Word w;
  if (single_char) {
    for (char ch : text) {
      if (ch == ' ' || ch == '\t') continue;
      w.push_back(index_of(std::string_view(&ch, 1)));
    }
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(index_of(tok));
  return w;
}

std::string Alphabet::render(const Word& w) const {
  bool single_char = std::all_of(symbols_.begin(), symbols_.end(),
                                 [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!single_char && i > 0) out += ' ';
    out += name(w[i]);
  }
  return out;
}

std::vector<std::string> Alphabet::names_of(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (SymbolId a : w) out.push_back(name(a));
  return out;
}

Word Alphabet::from_names(const std::vector<std::string>& names) const {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(index_of(n));
  return w;
}

std::string_view kind_tag(Kind k) {
  switch (k) {
    case Kind::B: return "B";
    case Kind::S: return "S";
    case Kind::OmegaB: return "wB";
    case Kind::OmegaS: return "wS";
  }
  return "?";
}

bool is_omega(Kind k) { return k == Kind::OmegaB || k == Kind::OmegaS; }

bool CounterAutomaton::is_final(StateId q) const {
  if (!finals) return false;
  return std::find(finals->begin(), finals->end(), q) != finals->end();
}

bool CounterAutomaton::has_epsilon() const {
  return std::any_of(transitions.begin(), transitions.end(),
                     [](const CounterTransition& t) { return t.label == kEpsilon; });
}

SymbolId UPWord::at(size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

UPWord make_up_word(const Alphabet& alphabet, std::string_view prefix, std::string_view period) {
  UPWord u{alphabet.parse(prefix), alphabet.parse(period)};
  if (u.period.empty()) throw InvalidArgument("ultimately periodic word needs a non-empty period");
  return u;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context) {
  if (a != b) throw AlphabetMismatch(std::string(context) + ": alphabets differ");
}

namespace {

void check_state_list(const std::vector<StateId>& list, int n, const std::string& what,
                      std::vector<Diagnostic>& out) {
  for (StateId q : list) {
    if (q < 0 || q >= n) {
      out.push_back({"unknown-state", what + " refers to undeclared state #" + std::to_string(q)});
    }
  }
}

void check_names(const std::vector<std::string>& names, const std::string& what,
                 std::vector<Diagnostic>& out) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) out.push_back({"duplicate-" + what, what + " '" + n + "' declared twice"});
  }
}

void check_alphabet(const Alphabet& alphabet, std::vector<Diagnostic>& out) {
  if (alphabet.size() == 0) out.push_back({"empty-alphabet", "alphabet must not be empty"});
  check_names(alphabet.symbols(), "symbol", out);
}

// Detects a cycle of silent moves by DFS colouring.
template <typename Transition>
void check_epsilon_acyclic(int n, const std::vector<Transition>& transitions,
                           std::vector<Diagnostic>& out) {
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  for (const auto& t : transitions) {
    if (t.label == kEpsilon && t.src >= 0 && t.src < n && t.dst >= 0 && t.dst < n) {
      succ[static_cast<size_t>(t.src)].push_back(t.dst);
    }
  }
  std::vector<int> colour(static_cast<size_t>(n), 0);
  bool found = false;
  std::function<void(int)> dfs = [&](int v) {
    colour[static_cast<size_t>(v)] = 1;
    for (int w : succ[static_cast<size_t>(v)]) {
      if (colour[static_cast<size_t>(w)] == 1) found = true;
      else if (colour[static_cast<size_t>(w)] == 0) dfs(w);
    }
    colour[static_cast<size_t>(v)] = 2;
  };
  for (int v = 0; v < n && !found; ++v) {
    if (colour[static_cast<size_t>(v)] == 0) dfs(v);
  }
  if (found) out.push_back({"epsilon-cycle", "silent transitions form a cycle"});
}

template <typename Transition>
void check_transition_shape(const Transition& t, size_t index, int n, const Alphabet& alphabet,
                            bool allow_epsilon, std::vector<Diagnostic>& out) {
  std::string where = "transition #" + std::to_string(index);
  if (t.src < 0 || t.src >= n) out.push_back({"unknown-state", where + " starts in an undeclared state"});
  if (t.dst < 0 || t.dst >= n) out.push_back({"unknown-state", where + " ends in an undeclared state"});
  if (t.label == kEpsilon) {
    if (!allow_epsilon) out.push_back({"epsilon-not-allowed", where + " is silent"});
  } else if (t.label < 0 || t.label >= alphabet.size()) {
    out.push_back({"unknown-symbol", where + " carries a label outside the alphabet"});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const CounterAutomaton& a) {
  std::vector<Diagnostic> out;
  check_alphabet(a.alphabet, out);
  check_names(a.states, "state", out);
  check_names(a.counters, "counter", out);
  const int n = a.num_states();
  check_state_list(a.initial, n, "initial set", out);
  bool wants_finals = a.kind == Kind::B || a.kind == Kind::S;
  if (wants_finals && !a.finals) out.push_back({"missing-finals", "finite-word kinds need final states"});
  if (!wants_finals && a.finals) out.push_back({"unexpected-finals", "omega kinds carry no final states"});
  if (a.finals) check_state_list(*a.finals, n, "final set", out);
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    check_transition_shape(t, i, n, a.alphabet, true, out);
    if (t.ops.size() != a.counters.size()) {
      out.push_back({"ops-arity", "transition #" + std::to_string(i) + " has " + std::to_string(t.ops.size()) +
                                      " counter operations, expected " + std::to_string(a.counters.size())});
    }
  }
  check_epsilon_acyclic(n, a.transitions, out);
  return out;
}

std::vector<Diagnostic> validate(const Nfa& a) {
  std::vector<Diagnostic> out;
  check_alphabet(a.alphabet, out);
  check_names(a.states, "state", out);
  const int n = a.num_states();
  check_state_list(a.initial, n, "initial set", out);
  check_state_list(a.finals, n, "final set", out);
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    check_transition_shape(a.transitions[i], i, n, a.alphabet, true, out);
  }
  check_epsilon_acyclic(n, a.transitions, out);
  return out;
}

std::vector<Diagnostic> validate(const BuchiAutomaton& a) {
  std::vector<Diagnostic> out;
  check_alphabet(a.alphabet, out);
  check_names(a.states, "state", out);
  const int n = a.num_states();
  check_state_list(a.initial, n, "initial set", out);
  if (a.acceptance.empty()) out.push_back({"missing-acceptance", "acceptance needs at least one set"});
  for (size_t i = 0; i < a.acceptance.size(); ++i) {
    check_state_list(a.acceptance[i], n, "acceptance set #" + std::to_string(i), out);
  }
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    check_transition_shape(a.transitions[i], i, n, a.alphabet, false, out);
  }
  return out;
}

BuchiAutomaton up_safety(const UPWord& u, const Alphabet& alphabet) {
  if (u.period.empty()) throw InvalidArgument("up_safety: empty period");
  for (SymbolId s : u.prefix) {
    if (s < 0 || s >= alphabet.size()) throw ForeignSymbol("up_safety: prefix symbol outside alphabet");
  }
  for (SymbolId s : u.period) {
    if (s < 0 || s >= alphabet.size()) throw ForeignSymbol("up_safety: period symbol outside alphabet");
  }
  BuchiAutomaton d;
  d.alphabet = alphabet;
  const int live = static_cast<int>(u.prefix.size() + u.period.size());
  const int sink = live;
  for (int i = 0; i < live; ++i) d.states.push_back("p" + std::to_string(i));
  d.states.push_back("sink");
  d.initial = {0};
  for (int i = 0; i < live; ++i) {
    SymbolId expected = u.at(static_cast<size_t>(i));
    int next = i + 1 == live ? static_cast<int>(u.prefix.size()) : i + 1;
    for (SymbolId a = 0; a < alphabet.size(); ++a) {
      d.transitions.push_back({i, a, a == expected ? next : sink});
    }
  }
  for (SymbolId a = 0; a < alphabet.size(); ++a) d.transitions.push_back({sink, a, sink});
  std::vector<StateId> live_states(static_cast<size_t>(live));
  for (int i = 0; i < live; ++i) live_states[static_cast<size_t>(i)] = i;
  d.acceptance = {live_states};
  return d;
}

CounterAutomaton product_safety(const CounterAutomaton& a, const BuchiAutomaton& d) {
  require_same_alphabet(a.alphabet, d.alphabet, "product_safety");
  std::vector<bool> allowed(static_cast<size_t>(d.num_states()), true);
  if (!d.acceptance.empty()) {
    std::fill(allowed.begin(), allowed.end(), false);
    for (StateId q : d.acceptance.front()) allowed[static_cast<size_t>(q)] = true;
  }
  // delta[q][a] = successors of d
  std::vector<std::vector<std::vector<StateId>>> delta(
      static_cast<size_t>(d.num_states()), std::vector<std::vector<StateId>>(static_cast<size_t>(d.alphabet.size())));
  for (const auto& t : d.transitions) delta[static_cast<size_t>(t.src)][static_cast<size_t>(t.label)].push_back(t.dst);

  CounterAutomaton out;
  out.kind = a.kind;
  out.alphabet = a.alphabet;
  out.counters = a.counters;
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = index.try_emplace({p, q}, static_cast<StateId>(out.states.size()));
    if (inserted) {
      out.states.push_back("(" + a.states[static_cast<size_t>(p)] + "," + d.states[static_cast<size_t>(q)] + ")");
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (StateId p : a.initial) {
    for (StateId q : d.initial) {
      if (allowed[static_cast<size_t>(q)]) out.initial.push_back(intern(p, q));
    }
  }
  std::vector<std::vector<int>> out_edges(static_cast<size_t>(a.num_states()));
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    out_edges[static_cast<size_t>(a.transitions[i].src)].push_back(static_cast<int>(i));
  }
  for (size_t w = 0; w < work.size(); ++w) {
    auto [p, q] = work[w];
    StateId from = index.at({p, q});
    for (int ti : out_edges[static_cast<size_t>(p)]) {
      const auto& t = a.transitions[static_cast<size_t>(ti)];
      if (t.label == kEpsilon) {
        StateId to = intern(t.dst, q);
        out.transitions.push_back({from, kEpsilon, t.ops, to});
        continue;
      }
      for (StateId q2 : delta[static_cast<size_t>(q)][static_cast<size_t>(t.label)]) {
        if (!allowed[static_cast<size_t>(q2)]) continue;
        StateId to = intern(t.dst, q2);
        out.transitions.push_back({from, t.label, t.ops, to});
      }
    }
  }
  if (a.finals) {
    out.finals.emplace();
    for (const auto& [key, id] : index) {
      if (a.is_final(key.first)) out.finals->push_back(id);
    }
    std::sort(out.finals->begin(), out.finals->end());
  }
  return out;
}

namespace {

// Composite effect of a sequence of counter operations squeezed into one.
struct OpSummary {
  bool reset = false;
  bool inc = false;
};

CounterOp squeeze(const OpSummary& s) {
  if (s.reset) return CounterOp::Reset;
  return s.inc ? CounterOp::Inc : CounterOp::Nil;
}

void absorb(std::vector<OpSummary>& acc, const std::vector<CounterOp>& ops) {
  for (size_t c = 0; c < ops.size(); ++c) {
    if (ops[c] == CounterOp::Reset) acc[c].reset = true;
    if (ops[c] == CounterOp::Inc) acc[c].inc = true;
  }
}

}  // namespace

CounterAutomaton eliminate_epsilon(const CounterAutomaton& a) {
  if (!a.has_epsilon()) return a;
  require_valid(a);
  const int n = a.num_states();
  const size_t k = a.counters.size();
  std::vector<std::vector<int>> eps_out(static_cast<size_t>(n)), letter_out(static_cast<size_t>(n));
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    (t.label == kEpsilon ? eps_out : letter_out)[static_cast<size_t>(t.src)].push_back(static_cast<int>(i));
  }
  // All silent paths from each state, as (target, accumulated summary).
  using PathEnd = std::pair<StateId, std::vector<OpSummary>>;
  std::vector<std::vector<PathEnd>> silent(static_cast<size_t>(n));
  for (StateId p = 0; p < n; ++p) {
    std::vector<PathEnd> stack{{p, std::vector<OpSummary>(k)}};
    while (!stack.empty()) {
      PathEnd cur = stack.back();
      stack.pop_back();
      silent[static_cast<size_t>(p)].push_back(cur);
      for (int ti : eps_out[static_cast<size_t>(cur.first)]) {
        const auto& t = a.transitions[static_cast<size_t>(ti)];
        PathEnd next{t.dst, cur.second};
        absorb(next.second, t.ops);
        stack.push_back(std::move(next));
      }
    }
  }

  CounterAutomaton out = a;
  out.transitions.clear();
  std::set<std::tuple<StateId, SymbolId, std::vector<CounterOp>, StateId>> seen;
  auto emit = [&](StateId src, SymbolId label, const std::vector<OpSummary>& summary, StateId dst) {
    std::vector<CounterOp> ops(k);
    for (size_t c = 0; c < k; ++c) ops[c] = squeeze(summary[c]);
    if (seen.emplace(src, label, ops, dst).second) out.transitions.push_back({src, label, ops, dst});
  };
  // Letter transition followed by any silent path; for initial states also
  // preceded by a silent path.
  std::vector<bool> is_init(static_cast<size_t>(n), false);
  for (StateId i : a.initial) is_init[static_cast<size_t>(i)] = true;
  for (StateId p = 0; p < n; ++p) {
    for (const auto& [mid, before] : silent[static_cast<size_t>(p)]) {
      bool leading = mid != p;
      if (leading && !is_init[static_cast<size_t>(p)]) continue;
      for (int ti : letter_out[static_cast<size_t>(mid)]) {
        const auto& t = a.transitions[static_cast<size_t>(ti)];
        for (const auto& [dst, after] : silent[static_cast<size_t>(t.dst)]) {
          std::vector<OpSummary> s = before;
          absorb(s, t.ops);
          for (size_t c = 0; c < k; ++c) {
            s[c].reset = s[c].reset || after[c].reset;
            s[c].inc = s[c].inc || after[c].inc;
          }
          emit(p, t.label, s, dst);
        }
      }
    }
  }
  if (out.finals) {
    std::set<StateId> finals(out.finals->begin(), out.finals->end());
    for (StateId i : a.initial) {
      // A silent path with resets cannot be replayed on the empty word
      // without silent moves, so only reset-free paths make i final.
      for (const auto& [dst, summary] : silent[static_cast<size_t>(i)]) {
        const bool resets = std::any_of(summary.begin(), summary.end(), [](const OpSummary& o) { return o.reset; });
        if (a.is_final(dst) && !resets) finals.insert(i);
      }
    }
    out.finals = std::vector<StateId>(finals.begin(), finals.end());
  }
  return out;
}

Nfa strip(const CounterAutomaton& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  n.states = a.states;
  n.initial = a.initial;
  if (a.finals) n.finals = *a.finals;
  n.transitions.reserve(a.transitions.size());
  std::set<std::tuple<StateId, SymbolId, StateId>> seen;
  for (const auto& t : a.transitions) {
    if (seen.emplace(t.src, t.label, t.dst).second) n.transitions.push_back({t.src, t.label, t.dst});
  }
  return n;
}

std::vector<ResetEvent> run_resets(const CounterAutomaton& a, const Run& run) {
  std::vector<int> value(a.counters.size(), 0);
  std::vector<ResetEvent> out;
  for (size_t i = 0; i < run.transitions.size(); ++i) {
    int ti = run.transitions[i];
    if (ti < 0 || ti >= static_cast<int>(a.transitions.size())) throw InvalidArgument("run refers to unknown transition");
    const auto& t = a.transitions[static_cast<size_t>(ti)];
    if (i > 0 && a.transitions[static_cast<size_t>(run.transitions[i - 1])].dst != t.src) {
      throw InvalidArgument("run transitions do not chain at position " + std::to_string(i));
    }
    for (size_t c = 0; c < t.ops.size(); ++c) {
      if (t.ops[c] == CounterOp::Inc) ++value[c];
      if (t.ops[c] == CounterOp::Reset) {
        out.push_back({static_cast<CounterId>(c), static_cast<int>(i), value[c]});
        value[c] = 0;
      }
    }
  }
  return out;
}

Word run_word(const CounterAutomaton& a, const Run& run) {
  Word w;
  for (int ti : run.transitions) {
    SymbolId l = a.transitions.at(static_cast<size_t>(ti)).label;
    if (l != kEpsilon) w.push_back(l);
  }
  return w;
}

namespace {

std::vector<StateId> renumbering(const std::vector<bool>& keep) {
  std::vector<StateId> map(keep.size(), -1);
  StateId next = 0;
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) map[i] = next++;
  }
  return map;
}

std::vector<StateId> remap_list(const std::vector<StateId>& list, const std::vector<StateId>& map) {
  std::vector<StateId> out;
  for (StateId q : list) {
    if (map[static_cast<size_t>(q)] >= 0) out.push_back(map[static_cast<size_t>(q)]);
  }
  return out;
}

std::vector<std::string> remap_names(const std::vector<std::string>& names, const std::vector<bool>& keep) {
  std::vector<std::string> out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (keep[i]) out.push_back(names[i]);
  }
  return out;
}

}  // namespace

Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep) {
  auto map = renumbering(keep);
  Nfa out;
  out.alphabet = a.alphabet;
  out.states = remap_names(a.states, keep);
  out.initial = remap_list(a.initial, map);
  out.finals = remap_list(a.finals, map);
  for (const auto& t : a.transitions) {
    StateId s = map[static_cast<size_t>(t.src)], d = map[static_cast<size_t>(t.dst)];
    if (s >= 0 && d >= 0) out.transitions.push_back({s, t.label, d});
  }
  return out;
}

BuchiAutomaton restrict_states(const BuchiAutomaton& a, const std::vector<bool>& keep) {
  auto map = renumbering(keep);
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  out.states = remap_names(a.states, keep);
  out.initial = remap_list(a.initial, map);
  for (const auto& f : a.acceptance) out.acceptance.push_back(remap_list(f, map));
  for (const auto& t : a.transitions) {
    StateId s = map[static_cast<size_t>(t.src)], d = map[static_cast<size_t>(t.dst)];
    if (s >= 0 && d >= 0) out.transitions.push_back({s, t.label, d});
  }
  return out;
}

CounterAutomaton restrict_states(const CounterAutomaton& a, const std::vector<bool>& keep) {
  auto map = renumbering(keep);
  CounterAutomaton out;
  out.kind = a.kind;
  out.alphabet = a.alphabet;
  out.counters = a.counters;
  out.states = remap_names(a.states, keep);
  out.initial = remap_list(a.initial, map);
  if (a.finals) out.finals = remap_list(*a.finals, map);
  for (const auto& t : a.transitions) {
    StateId s = map[static_cast<size_t>(t.src)], d = map[static_cast<size_t>(t.dst)];
    if (s >= 0 && d >= 0) out.transitions.push_back({s, t.label, t.ops, d});
  }
  return out;
}

}  // namespace omegasep
