#include "omegasep/reduction.hpp"

#include <map>
#include <tuple>

namespace omegasep {

std::string_view to_string(EndType t) { return t == EndType::Left ? "<-" : "->"; }

EndType end_type(const CounterAutomaton& a, const Run& run, CounterId c, int k) {
  if (c < 0 || c >= a.num_counters()) throw InvalidArgument("end_type: unknown counter " + std::to_string(c));
  const int len = static_cast<int>(run.transitions.size());
  if (k < 0 || k > len) throw InvalidArgument("end_type: cut outside the run");
  auto op = [&](int i) { return a.transitions.at(static_cast<size_t>(run.transitions[static_cast<size_t>(i)])).ops[static_cast<size_t>(c)]; };
  int left = 0;
  bool left_reset = false;
  for (int i = k - 1; i >= 0; --i) {
    if (op(i) == CounterOp::Reset) {
      left_reset = true;
      break;
    }
    if (op(i) == CounterOp::Inc) ++left;
  }
  int right = 0;
  bool right_reset = false;
  for (int i = k; i < len; ++i) {
    if (op(i) == CounterOp::Reset) {
      right_reset = true;
      break;
    }
    if (op(i) == CounterOp::Inc) ++right;
  }
  int vl = left_reset ? left : 0;
  int vr = right_reset ? right : 0;
  return vl < vr ? EndType::Right : EndType::Left;
}

std::string tau_to_string(TauVector tau, int counters) {
  std::string s;
  for (int c = 0; c < counters; ++c) {
    if (c) s += ",";
    s += std::string(to_string(((tau >> c) & 1U) ? EndType::Left : EndType::Right));
  }
  return s;
}

CounterAutomaton empty_T(Kind kind, const Alphabet& alphabet, const std::vector<std::string>& counters) {
  CounterAutomaton out;
  out.kind = kind;
  out.alphabet = alphabet;
  out.states = {"empty"};
  out.initial = {0};
  out.counters = counters;
  if (kind == Kind::B || kind == Kind::S) out.finals = std::vector<StateId>{};
  return out;
}

bool is_degenerate(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q) {
  const Relation& s = m.element(t.s);
  const Relation& e = m.element(t.e);
  if (!e.get(q, q)) return true;
  for (StateId q0 : a.initial) {
    if (s.get(q0, q)) return false;
  }
  return true;
}

Nfa k_e_automaton(const TransitionMonoid& m, ElementId e) {
  Nfa out;
  out.alphabet = m.alphabet();
  for (size_t i = 0; i < m.size(); ++i) out.states.push_back("m" + std::to_string(i));
  out.initial = {m.neutral()};
  out.finals = {e};
  for (ElementId x = 0; x < static_cast<ElementId>(m.size()); ++x) {
    for (SymbolId a = 0; a < m.alphabet().size(); ++a) out.transitions.push_back({x, a, m.multiply(x, m.letter(a))});
  }
  return out;
}

namespace {

// Shared construction for A_q (tau = 0, end resets all counters) and
// A_{q,tau}.
CounterAutomaton build_part(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q,
                            std::optional<TauVector> tau, const ReductionOptions& opts) {
  const Kind kind = tau ? Kind::S : Kind::B;
  const int k = a.num_counters();
  if (k > 31) throw SizeGuardExceeded("reduction: more than 31 counters");
  if (!is_linked_pair(m, t)) throw InvalidArgument("reduction: (s, e) is not a linked pair");
  if (is_degenerate(a, m, t, q)) return empty_T(kind, a.alphabet, a.counters);
  const std::uint32_t all = (k == 0) ? 0U : ((std::uint32_t{1} << k) - 1U);
  const TauVector left = tau.value_or(0);

  CounterAutomaton out;
  out.kind = kind;
  out.alphabet = a.alphabet;
  out.counters = a.counters;
  out.states.push_back("*");
  out.finals = std::vector<StateId>{0};
  using Key = std::tuple<StateId, ElementId, std::uint32_t>;
  std::map<Key, StateId> index;
  std::vector<Key> work;
  auto intern = [&](StateId p, ElementId r, std::uint32_t b) {
    auto [it, inserted] = index.try_emplace(Key{p, r, b}, static_cast<StateId>(out.states.size()));
    if (inserted) {
      work.emplace_back(p, r, b);
      std::string bits;
      for (int c = 0; c < k; ++c) bits += ((b >> c) & 1U) ? "T" : "F";
      out.states.push_back("(" + a.states[static_cast<size_t>(p)] + ",m" + std::to_string(r) + "," + bits + ")");
    }
    return it->second;
  };
  if (!opts.reachable_only) {
    // Materialize the whole state space; the initial state is the first
    // product state in this order only when q is 0, so record it explicitly.
    for (StateId p = 0; p < a.num_states(); ++p) {
      for (ElementId r = 0; r < static_cast<ElementId>(m.size()); ++r) {
        for (std::uint32_t b = 0; b <= all; ++b) intern(p, r, b);
      }
    }
  }
  out.initial = {intern(q, m.neutral(), 0)};
  std::vector<std::vector<const CounterTransition*>> outgoing(static_cast<size_t>(a.num_states()));
  for (const auto& tr : a.transitions) outgoing[static_cast<size_t>(tr.src)].push_back(&tr);
  std::vector<CounterOp> end_ops(static_cast<size_t>(k));
  for (int c = 0; c < k; ++c) {
    bool reset = !tau || ((left >> c) & 1U);
    end_ops[static_cast<size_t>(c)] = reset ? CounterOp::Reset : CounterOp::Nil;
  }
  for (size_t i = 0; i < work.size(); ++i) {
    auto [p, r, b] = work[i];
    StateId from = static_cast<StateId>(i + 1);
    for (const CounterTransition* tr : outgoing[static_cast<size_t>(p)]) {
      std::uint32_t nb = b;
      std::vector<CounterOp> ops = tr->ops;
      for (int c = 0; c < k; ++c) {
        const std::uint32_t bit = std::uint32_t{1} << c;
        if (tau && !(b & bit) && (left & bit)) ops[static_cast<size_t>(c)] = CounterOp::Nil;
        if (tr->ops[static_cast<size_t>(c)] == CounterOp::Reset) nb |= bit;
      }
      ElementId nr = tr->label == kEpsilon ? r : m.multiply(r, m.letter(tr->label));
      out.transitions.push_back({from, tr->label, std::move(ops), intern(tr->dst, nr, nb)});
    }
    if (p == q && b == all && r == t.e) out.transitions.push_back({from, kEpsilon, end_ops, 0});
  }
  return out;
}

}  // namespace

CounterAutomaton build_A_q(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q,
                           const ReductionOptions& opts) {
  if (a.kind != Kind::OmegaB) throw KindMismatch("build_A_q: expected an wB automaton");
  return build_part(a, m, t, q, std::nullopt, opts);
}

CounterAutomaton build_A_q_tau(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t, StateId q,
                               TauVector tau, const ReductionOptions& opts) {
  if (a.kind != Kind::OmegaS) throw KindMismatch("build_A_q_tau: expected an wS automaton");
  return build_part(a, m, t, q, tau, opts);
}

MtLanguage build_M_t(const CounterAutomaton& a, const TransitionMonoid& m, const LinkedPair& t) {
  if (!is_omega(a.kind)) throw KindMismatch("build_M_t: expected an wB or wS automaton");
  MtLanguage mt;
  mt.kind = a.kind == Kind::OmegaB ? Kind::B : Kind::S;
  mt.t = t;
  const int k = a.num_counters();
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (is_degenerate(a, m, t, q)) continue;
    if (mt.kind == Kind::B) {
      mt.parts.push_back({q, 0, build_A_q(a, m, t, q)});
    } else {
      for (TauVector tau = 0; tau < (TauVector{1} << k); ++tau) mt.parts.push_back({q, tau, build_A_q_tau(a, m, t, q, tau)});
    }
  }
  return mt;
}

CounterAutomaton mt_union(const MtLanguage& mt, const CounterAutomaton& source) {
  CounterAutomaton out = empty_T(mt.kind, source.alphabet, source.counters);
  if (mt.parts.empty()) return out;
  out.states.clear();
  out.initial.clear();
  std::vector<StateId> finals;
  for (size_t i = 0; i < mt.parts.size(); ++i) {
    const auto& part = mt.parts[i].automaton;
    const StateId offset = out.num_states();
    for (const auto& s : part.states) out.states.push_back(std::to_string(i) + "." + s);
    for (StateId q : part.initial) out.initial.push_back(q + offset);
    for (StateId f : *part.finals) finals.push_back(f + offset);
    for (const auto& tr : part.transitions) out.transitions.push_back({tr.src + offset, tr.label, tr.ops, tr.dst + offset});
  }
  out.finals = finals;
  return out;
}

}  // namespace omegasep
