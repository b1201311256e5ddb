#include "omegasep/profinite.hpp"

#include <map>

#include "omegasep/nfa.hpp"
#include "omegasep/values.hpp"

namespace omegasep {

namespace {

void require_finite(const CounterAutomaton& t, const char* context) {
  if (t.kind != Kind::B && t.kind != Kind::S) {
    throw KindMismatch(std::string(context) + ": expected kind B or S, got " + std::string(kind_tag(t.kind)));
  }
}

std::vector<bool> final_mask(const std::vector<StateId>& finals, int n) {
  std::vector<bool> mask(static_cast<size_t>(n), false);
  for (StateId f : finals) mask[static_cast<size_t>(f)] = true;
  return mask;
}

}  // namespace

CounterAutomaton restrict_profinite(const CounterAutomaton& t, const Nfa& n) {
  require_finite(t, "restrict_profinite");
  require_same_alphabet(t.alphabet, n.alphabet, "restrict_profinite");
  CounterAutomaton out;
  out.kind = t.kind;
  out.alphabet = t.alphabet;
  out.counters = t.counters;
  std::vector<std::vector<const CounterTransition*>> tout(static_cast<size_t>(t.num_states()));
  for (const auto& tr : t.transitions) tout[static_cast<size_t>(tr.src)].push_back(&tr);
  std::vector<std::vector<const NfaTransition*>> nout(static_cast<size_t>(n.num_states()));
  for (const auto& tr : n.transitions) nout[static_cast<size_t>(tr.src)].push_back(&tr);
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId r) {
    auto [it, inserted] = index.try_emplace({p, r}, static_cast<StateId>(work.size()));
    if (inserted) {
      work.emplace_back(p, r);
      out.states.push_back("(" + t.states[static_cast<size_t>(p)] + "," + n.states[static_cast<size_t>(r)] + ")");
    }
    return it->second;
  };
  for (StateId p : t.initial) {
    for (StateId r : n.initial) out.initial.push_back(intern(p, r));
  }
  const std::vector<CounterOp> nil(static_cast<size_t>(t.num_counters()), CounterOp::Nil);
  for (size_t i = 0; i < work.size(); ++i) {
    auto [p, r] = work[i];
    StateId from = static_cast<StateId>(i);
    for (const CounterTransition* tr : tout[static_cast<size_t>(p)]) {
      if (tr->label == kEpsilon) {
        out.transitions.push_back({from, kEpsilon, tr->ops, intern(tr->dst, r)});
        continue;
      }
      for (const NfaTransition* nt : nout[static_cast<size_t>(r)]) {
        if (nt->label == tr->label) out.transitions.push_back({from, tr->label, tr->ops, intern(tr->dst, nt->dst)});
      }
    }
    for (const NfaTransition* nt : nout[static_cast<size_t>(r)]) {
      if (nt->label == kEpsilon) out.transitions.push_back({from, kEpsilon, nil, intern(p, nt->dst)});
    }
  }
  auto nfin = final_mask(n.finals, n.num_states());
  std::vector<StateId> finals;
  for (size_t i = 0; i < work.size(); ++i) {
    if (t.is_final(work[i].first) && nfin[static_cast<size_t>(work[i].second)]) finals.push_back(static_cast<StateId>(i));
  }
  out.finals = finals;
  return out;
}

CounterAutomaton counter_product(const CounterAutomaton& t1, const CounterAutomaton& t2) {
  require_same_alphabet(t1.alphabet, t2.alphabet, "counter_product");
  CounterAutomaton out;
  out.kind = t1.kind;
  out.alphabet = t1.alphabet;
  for (const auto& c : t1.counters) out.counters.push_back("1." + c);
  for (const auto& c : t2.counters) out.counters.push_back("2." + c);
  const size_t k1 = t1.counters.size();
  const size_t k2 = t2.counters.size();
  std::vector<std::vector<const CounterTransition*>> o1(static_cast<size_t>(t1.num_states())),
      o2(static_cast<size_t>(t2.num_states()));
  for (const auto& tr : t1.transitions) o1[static_cast<size_t>(tr.src)].push_back(&tr);
  for (const auto& tr : t2.transitions) o2[static_cast<size_t>(tr.src)].push_back(&tr);
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = index.try_emplace({p, q}, static_cast<StateId>(work.size()));
    if (inserted) {
      work.emplace_back(p, q);
      out.states.push_back("(" + t1.states[static_cast<size_t>(p)] + "," + t2.states[static_cast<size_t>(q)] + ")");
    }
    return it->second;
  };
  for (StateId p : t1.initial) {
    for (StateId q : t2.initial) out.initial.push_back(intern(p, q));
  }
  auto join = [&](const std::vector<CounterOp>* a, const std::vector<CounterOp>* b) {
    std::vector<CounterOp> ops;
    ops.reserve(k1 + k2);
    if (a) ops.insert(ops.end(), a->begin(), a->end());
    else ops.insert(ops.end(), k1, CounterOp::Nil);
    if (b) ops.insert(ops.end(), b->begin(), b->end());
    else ops.insert(ops.end(), k2, CounterOp::Nil);
    return ops;
  };
  for (size_t i = 0; i < work.size(); ++i) {
    auto [p, q] = work[i];
    StateId from = static_cast<StateId>(i);
    for (const CounterTransition* a : o1[static_cast<size_t>(p)]) {
      if (a->label == kEpsilon) out.transitions.push_back({from, kEpsilon, join(&a->ops, nullptr), intern(a->dst, q)});
    }
    for (const CounterTransition* b : o2[static_cast<size_t>(q)]) {
      if (b->label == kEpsilon) out.transitions.push_back({from, kEpsilon, join(nullptr, &b->ops), intern(p, b->dst)});
    }
    for (const CounterTransition* a : o1[static_cast<size_t>(p)]) {
      if (a->label == kEpsilon) continue;
      for (const CounterTransition* b : o2[static_cast<size_t>(q)]) {
        if (b->label == a->label) out.transitions.push_back({from, a->label, join(&a->ops, &b->ops), intern(a->dst, b->dst)});
      }
    }
  }
  if (t1.finals && t2.finals) {
    std::vector<StateId> finals;
    for (size_t i = 0; i < work.size(); ++i) {
      if (t1.is_final(work[i].first) && t2.is_final(work[i].second)) finals.push_back(static_cast<StateId>(i));
    }
    out.finals = finals;
  }
  return out;
}

CounterAutomaton intersect_T(const CounterAutomaton& t1, const CounterAutomaton& t2) {
  require_finite(t1, "intersect_T");
  if (t1.kind != t2.kind) throw KindMismatch("intersect_T: kinds differ");
  require_same_alphabet(t1.alphabet, t2.alphabet, "intersect_T");
  return counter_product(t1, t2);
}

bool is_empty_B(const CounterAutomaton& t) {
  if (t.kind != Kind::B) throw KindMismatch("is_empty_B: expected kind B");
  return nfa_is_empty(strip(t));
}

bool is_empty_S(const CounterAutomaton& t) {
  if (t.kind != Kind::S) throw KindMismatch("is_empty_S: expected kind S");
  auto summary = summarize_effects(t, false);
  for (StateId f = 0; f < t.num_states(); ++f) {
    if (!t.is_final(f)) continue;
    for (auto v : summary.reach[static_cast<size_t>(f)].items()) {
      if (finite_good(v, t.num_counters())) return false;
    }
  }
  return true;
}

bool is_empty_S_by_closure(const CounterAutomaton& t, size_t guard) {
  if (t.kind != Kind::S) throw KindMismatch("is_empty_S_by_closure: expected kind S");
  const int k = t.num_counters();
  auto good = [&](const EffectMatrix& m) {
    for (StateId i : t.initial) {
      for (StateId f = 0; f < t.num_states(); ++f) {
        if (!t.is_final(f)) continue;
        for (auto v : m.at(i, f)) {
          if (finite_good(v, k)) return true;
        }
      }
    }
    return false;
  };
  if (good(silent_matrix(t))) return false;
  for (const auto& m : stabilization_closure(t, guard)) {
    if (good(m)) return false;
  }
  return true;
}

bool is_empty_T(const CounterAutomaton& t) {
  require_finite(t, "is_empty_T");
  return t.kind == Kind::B ? is_empty_B(t) : is_empty_S(t);
}

bool is_disjoint_T(const CounterAutomaton& t1, const CounterAutomaton& t2) { return is_empty_T(intersect_T(t1, t2)); }

Nfa separator_B(const CounterAutomaton& m1, const CounterAutomaton& m2) {
  if (m1.kind != Kind::B || m2.kind != Kind::B) throw KindMismatch("separator_B: expected two B-automata");
  auto product = intersect_T(m1, m2);
  if (auto w = nfa_shortest_word(strip(product))) {
    auto names = m1.alphabet.names_of(*w);
    throw NotDisjoint("separator_B: languages intersect, witness word \"" + m1.alphabet.render(*w) + "\"", names, {},
                      true);
  }
  return strip(m1);
}

SeparatorS separator_S(const CounterAutomaton& m1, const CounterAutomaton& m2, std::uint64_t ceiling) {
  if (m1.kind != Kind::S || m2.kind != Kind::S) throw KindMismatch("separator_S: expected two S-automata");
  if (!is_empty_S(intersect_T(m1, m2))) throw NotDisjoint("separator_S: languages intersect");
  for (std::uint64_t n = 0; n <= ceiling; ++n) {
    Nfa above = cutoff_S(m2, n);
    if (is_empty_S(restrict_profinite(m1, above))) return SeparatorS{nfa_complement(above), n};
  }
  throw SizeGuardExceeded("separator_S: no threshold found up to " + std::to_string(ceiling));
}

}  // namespace omegasep
