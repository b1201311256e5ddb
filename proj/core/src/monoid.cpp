#include "omegasep/monoid.hpp"

#include <deque>
#include <map>
#include <set>

namespace omegasep {

Relation Relation::identity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

bool Relation::empty() const {
  for (auto row : rows_) {
    if (row) return false;
  }
  return true;
}

Relation Relation::operator*(const Relation& other) const {
  Relation out(n_);
  for (int p = 0; p < n_; ++p) {
    std::uint64_t row = rows_[static_cast<size_t>(p)];
    std::uint64_t acc = 0;
    while (row) {
      int q = __builtin_ctzll(row);
      row &= row - 1;
      acc |= other.rows_[static_cast<size_t>(q)];
    }
    out.rows_[static_cast<size_t>(p)] = acc;
  }
  return out;
}

Relation Relation::operator|(const Relation& other) const {
  Relation out(n_);
  for (int p = 0; p < n_; ++p) out.rows_[static_cast<size_t>(p)] = rows_[static_cast<size_t>(p)] | other.rows_[static_cast<size_t>(p)];
  return out;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < n_; ++p) {
    for (int q = 0; q < n_; ++q) {
      if (get(p, q)) out.emplace_back(p, q);
    }
  }
  return out;
}

std::string Relation::to_string(const std::vector<std::string>& names) const {
  std::string s = "{";
  bool first = true;
  for (auto [p, q] : pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + names[static_cast<size_t>(p)] + "," + names[static_cast<size_t>(q)] + ")";
  }
  return s + "}";
}

size_t Relation::hash() const {
  size_t h = static_cast<size_t>(n_) * 0x9e3779b97f4a7c15ULL;
  for (auto row : rows_) h = (h ^ row) * 0x100000001b3ULL + (h >> 29);
  return h;
}

namespace {

Relation reflexive_transitive(Relation r) {
  Relation id = Relation::identity(r.size());
  Relation acc = id | r;
  while (true) {
    Relation next = acc * acc;
    if (next == acc) return acc;
    acc = next;
  }
}

struct LetterRelations {
  std::vector<Relation> letters;
  Relation silent;
};

template <typename T>
LetterRelations collect(const Alphabet& alphabet, int n, const std::vector<T>& transitions) {
  if (n > 64) throw SizeGuardExceeded("transition monoid: more than 64 states");
  LetterRelations out{std::vector<Relation>(static_cast<size_t>(alphabet.size()), Relation(n)), Relation(n)};
  for (const auto& t : transitions) {
    if (t.label == kEpsilon) out.silent.set(t.src, t.dst);
    else out.letters[static_cast<size_t>(t.label)].set(t.src, t.dst);
  }
  return out;
}

}  // namespace

TransitionMonoid TransitionMonoid::from_letters(const Alphabet& alphabet, int num_states,
                                                const std::vector<Relation>& letters, const Relation& silent,
                                                size_t guard) {
  TransitionMonoid m;
  m.alphabet_ = alphabet;
  m.num_states_ = num_states;
  m.silent_star_ = reflexive_transitive(silent);
  auto intern = [&](const Relation& r, const Word& w) {
    auto [it, inserted] = m.index_.try_emplace(r, static_cast<ElementId>(m.elements_.size()));
    if (inserted) {
      if (m.elements_.size() >= guard) {
        throw SizeGuardExceeded("transition monoid: more than " + std::to_string(guard) + " elements");
      }
      m.elements_.push_back(r);
      m.witness_.push_back(w);
      m.nonempty_witness_.emplace_back();
    }
    return std::make_pair(it->second, inserted);
  };
  intern(Relation::identity(num_states), Word{});
  std::vector<Relation> images;
  for (SymbolId a = 0; a < alphabet.size(); ++a) {
    images.push_back(m.silent_star_ * letters[static_cast<size_t>(a)] * m.silent_star_);
  }
  // Breadth-first over non-empty words; shortest witnesses come for free.
  std::deque<ElementId> queue;
  for (SymbolId a = 0; a < alphabet.size(); ++a) {
    auto [id, inserted] = intern(images[static_cast<size_t>(a)], Word{a});
    m.letters_.push_back(id);
    if (!m.nonempty_witness_[static_cast<size_t>(id)]) {
      m.nonempty_witness_[static_cast<size_t>(id)] = Word{a};
      queue.push_back(id);
    }
  }
  while (!queue.empty()) {
    ElementId x = queue.front();
    queue.pop_front();
    for (SymbolId a = 0; a < alphabet.size(); ++a) {
      Word w = *m.nonempty_witness_[static_cast<size_t>(x)];
      w.push_back(a);
      auto [id, inserted] = intern(m.elements_[static_cast<size_t>(x)] * images[static_cast<size_t>(a)], w);
      if (!m.nonempty_witness_[static_cast<size_t>(id)]) {
        m.nonempty_witness_[static_cast<size_t>(id)] = w;
        queue.push_back(id);
      }
    }
  }
  return m;
}

TransitionMonoid TransitionMonoid::of(const CounterAutomaton& a, size_t guard) {
  auto rel = collect(a.alphabet, a.num_states(), a.transitions);
  return from_letters(a.alphabet, a.num_states(), rel.letters, rel.silent, guard);
}

TransitionMonoid TransitionMonoid::of(const Nfa& a, size_t guard) {
  auto rel = collect(a.alphabet, a.num_states(), a.transitions);
  return from_letters(a.alphabet, a.num_states(), rel.letters, rel.silent, guard);
}

TransitionMonoid TransitionMonoid::of(const BuchiAutomaton& a, size_t guard) {
  auto rel = collect(a.alphabet, a.num_states(), a.transitions);
  return from_letters(a.alphabet, a.num_states(), rel.letters, rel.silent, guard);
}

std::optional<ElementId> TransitionMonoid::find(const Relation& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId TransitionMonoid::multiply(ElementId x, ElementId y) const {
  if (!table_.empty()) return table_[static_cast<size_t>(x) * elements_.size() + static_cast<size_t>(y)];
  auto id = find(element(x) * element(y));
  if (!id) throw Error("transition monoid: product left the monoid");
  return *id;
}

const std::vector<ElementId>& TransitionMonoid::table() const {
  if (table_.empty() && !elements_.empty()) {
    std::vector<ElementId> t(elements_.size() * elements_.size());
    for (size_t x = 0; x < elements_.size(); ++x) {
      for (size_t y = 0; y < elements_.size(); ++y) {
        t[x * elements_.size() + y] = multiply(static_cast<ElementId>(x), static_cast<ElementId>(y));
      }
    }
    table_ = std::move(t);
  }
  return table_;
}

ElementId TransitionMonoid::image(const Word& w) const {
  ElementId acc = neutral();
  for (SymbolId a : w) {
    if (a < 0 || a >= alphabet_.size()) throw ForeignSymbol("h_image: symbol id " + std::to_string(a) + " outside alphabet");
    acc = multiply(acc, letter(a));
  }
  return acc;
}

ElementId h_image(const TransitionMonoid& m, const Word& w) { return m.image(w); }

bool is_linked_pair(const TransitionMonoid& m, const LinkedPair& t) {
  return m.multiply(t.s, t.e) == t.s && m.multiply(t.e, t.e) == t.e;
}

std::vector<LinkedPair> linked_pairs(const TransitionMonoid& m) {
  std::vector<LinkedPair> out;
  for (ElementId e = 0; e < static_cast<ElementId>(m.size()); ++e) {
    if (!m.realized_nonempty(e) || !m.is_idempotent(e)) continue;
    for (ElementId s = 0; s < static_cast<ElementId>(m.size()); ++s) {
      if (m.realized_nonempty(s) && m.multiply(s, e) == s) out.push_back({s, e});
    }
  }
  return out;
}

int idempotent_exponent(const TransitionMonoid& m, ElementId x) {
  ElementId p = x;
  for (int k = 1; k <= static_cast<int>(m.size()) + 1; ++k) {
    if (m.is_idempotent(p)) return k;
    p = m.multiply(p, x);
  }
  throw Error("idempotent_exponent: no idempotent power found");
}

ElementId power(const TransitionMonoid& m, ElementId x, int k) {
  ElementId acc = m.neutral();
  for (int i = 0; i < k; ++i) acc = m.multiply(acc, x);
  return acc;
}

std::vector<CoherentWitness> coherent_pairs(const TransitionMonoid& m1, const TransitionMonoid& m2, size_t guard) {
  require_same_alphabet(m1.alphabet(), m2.alphabet(), "coherent_pairs");
  // Breadth-first search over pairs of images of common non-empty words.
  std::map<std::pair<ElementId, ElementId>, Word> reached;
  std::deque<std::pair<ElementId, ElementId>> queue;
  for (SymbolId a = 0; a < m1.alphabet().size(); ++a) {
    auto key = std::make_pair(m1.letter(a), m2.letter(a));
    if (reached.try_emplace(key, Word{a}).second) queue.push_back(key);
  }
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop_front();
    Word base = reached.at(key);
    for (SymbolId a = 0; a < m1.alphabet().size(); ++a) {
      auto next = std::make_pair(m1.multiply(key.first, m1.letter(a)), m2.multiply(key.second, m2.letter(a)));
      if (reached.count(next)) continue;
      if (reached.size() >= guard) throw SizeGuardExceeded("coherent_pairs: product monoid too large");
      Word w = base;
      w.push_back(a);
      reached.emplace(next, std::move(w));
      queue.push_back(next);
    }
  }
  std::vector<CoherentWitness> out;
  for (const auto& [e, we] : reached) {
    if (!m1.is_idempotent(e.first) || !m2.is_idempotent(e.second)) continue;
    for (const auto& [s, ws] : reached) {
      if (m1.multiply(s.first, e.first) != s.first || m2.multiply(s.second, e.second) != s.second) continue;
      out.push_back({LinkedPair{s.first, e.first}, LinkedPair{s.second, e.second}, ws, we});
    }
  }
  return out;
}

UPDecomposition up_decomposition(const UPWord& u, const TransitionMonoid& m) {
  if (u.period.empty()) throw InvalidArgument("up_decomposition: empty period");
  ElementId y = m.image(u.period);
  int k = idempotent_exponent(m, y);
  ElementId e = power(m, y, k);
  ElementId s = m.multiply(m.image(u.prefix), e);
  return UPDecomposition{LinkedPair{s, e}, k, k};
}

}  // namespace omegasep
