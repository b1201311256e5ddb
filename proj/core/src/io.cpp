#include "omegasep/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace omegasep {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, 0, 0);
}

const Json& field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) schema_error(name, "missing field");
  return *it;
}

std::vector<std::string> string_list(const Json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected a list of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) schema_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

struct NameIndex {
  std::map<std::string, int> ids;

  explicit NameIndex(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) ids.emplace(names[i], static_cast<int>(i));
  }

  int at(const std::string& name, const std::string& path, const char* what) const {
    auto it = ids.find(name);
    if (it == ids.end()) schema_error(path, std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }
};

std::vector<StateId> state_list(const Json& v, const NameIndex& states, const std::string& path) {
  std::vector<StateId> out;
  auto names = string_list(v, path);
  for (size_t i = 0; i < names.size(); ++i) out.push_back(states.at(names[i], path + "[" + std::to_string(i) + "]", "state"));
  return out;
}

CounterOp parse_op(const Json& v, const std::string& path) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "nil") return CounterOp::Nil;
    if (s == "inc") return CounterOp::Inc;
    if (s == "reset") return CounterOp::Reset;
  }
  schema_error(path, "counter operation must be \"nil\", \"inc\" or \"reset\"");
}

const char* op_name(CounterOp op) {
  switch (op) {
    case CounterOp::Nil: return "nil";
    case CounterOp::Inc: return "inc";
    case CounterOp::Reset: return "reset";
  }
  return "nil";
}

struct Common {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<StateId> initial;
};

Common parse_common(const Json& doc) {
  Common c;
  c.alphabet = Alphabet(string_list(field(doc, "alphabet"), "alphabet"));
  c.states = string_list(field(doc, "states"), "states");
  c.initial = state_list(field(doc, "initial"), NameIndex(c.states), "initial");
  return c;
}

SymbolId parse_label(const Json& v, const Alphabet& alphabet, const std::string& path) {
  if (v.is_null()) return kEpsilon;
  if (!v.is_string()) schema_error(path, "label must be a string or null");
  auto s = v.get<std::string>();
  auto id = alphabet.find(s);
  if (!id) schema_error(path, "unknown symbol '" + s + "'");
  return *id;
}

Json label_json(const Alphabet& alphabet, SymbolId label) {
  if (label == kEpsilon) return nullptr;
  return alphabet.name(label);
}

Json id_list(const std::vector<std::string>& names, const std::vector<StateId>& ids) {
  Json out = Json::array();
  for (StateId q : ids) out.push_back(names[static_cast<size_t>(q)]);
  return out;
}

template <typename T>
void expect_kind(const AnyAutomaton& a, const char* what) {
  if (!std::holds_alternative<T>(a)) throw KindMismatch(std::string("expected ") + what + " document");
}

}  // namespace

AnyAutomaton automaton_from_json(const Json& doc) {
  if (!doc.is_object()) schema_error("$", "document must be a JSON object");
  const Json& kind_field = field(doc, "kind");
  if (!kind_field.is_string()) schema_error("kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  Common common = parse_common(doc);
  NameIndex states(common.states);
  const Json& transitions = field(doc, "transitions");
  if (!transitions.is_array()) schema_error("transitions", "expected a list");

  if (kind == "nfa" || kind == "buchi") {
    std::vector<NfaTransition> ts;
    for (size_t i = 0; i < transitions.size(); ++i) {
      std::string path = "transitions[" + std::to_string(i) + "]";
      const Json& t = transitions[i];
      if (!t.is_object()) schema_error(path, "expected an object");
      if (t.contains("ops") && !t["ops"].empty()) schema_error(path + ".ops", "counter operations on a counterless automaton");
      ts.push_back({states.at(field(t, "from").get<std::string>(), path + ".from", "state"),
                    parse_label(field(t, "label"), common.alphabet, path + ".label"),
                    states.at(field(t, "to").get<std::string>(), path + ".to", "state")});
    }
    if (kind == "nfa") {
      Nfa n{common.alphabet, common.states, common.initial, state_list(field(doc, "finals"), states, "finals"), ts};
      return n;
    }
    BuchiAutomaton b{common.alphabet, common.states, common.initial, ts, {}};
    const Json& acc = field(doc, "acceptance");
    if (!acc.is_array()) schema_error("acceptance", "expected a list of state lists");
    for (size_t i = 0; i < acc.size(); ++i) {
      b.acceptance.push_back(state_list(acc[i], states, "acceptance[" + std::to_string(i) + "]"));
    }
    return b;
  }

  CounterAutomaton a;
  if (kind == "B") a.kind = Kind::B;
  else if (kind == "S") a.kind = Kind::S;
  else if (kind == "wB") a.kind = Kind::OmegaB;
  else if (kind == "wS") a.kind = Kind::OmegaS;
  else schema_error("kind", "unknown kind tag '" + kind + "'");
  a.alphabet = common.alphabet;
  a.states = common.states;
  a.initial = common.initial;
  a.counters = string_list(field(doc, "counters"), "counters");
  NameIndex counters(a.counters);
  if (a.kind == Kind::B || a.kind == Kind::S) a.finals = state_list(field(doc, "finals"), states, "finals");
  for (size_t i = 0; i < transitions.size(); ++i) {
    std::string path = "transitions[" + std::to_string(i) + "]";
    const Json& t = transitions[i];
    if (!t.is_object()) schema_error(path, "expected an object");
    CounterTransition ct;
    const Json& from = field(t, "from");
    const Json& to = field(t, "to");
    if (!from.is_string() || !to.is_string()) schema_error(path, "from/to must be state names");
    ct.src = states.at(from.get<std::string>(), path + ".from", "state");
    ct.dst = states.at(to.get<std::string>(), path + ".to", "state");
    ct.label = parse_label(field(t, "label"), a.alphabet, path + ".label");
    ct.ops.assign(a.counters.size(), CounterOp::Nil);
    std::vector<bool> given(a.counters.size(), false);
    const Json& ops = t.contains("ops") ? t["ops"] : Json::object();
    if (!ops.is_object()) schema_error(path + ".ops", "expected an object keyed by counter");
    for (auto it = ops.begin(); it != ops.end(); ++it) {
      int c = counters.at(it.key(), path + ".ops", "counter");
      ct.ops[static_cast<size_t>(c)] = parse_op(it.value(), path + ".ops." + it.key());
      given[static_cast<size_t>(c)] = true;
    }
    for (size_t c = 0; c < given.size(); ++c) {
      if (!given[c]) schema_error(path + ".ops", "missing operation for counter '" + a.counters[c] + "'");
    }
    a.transitions.push_back(std::move(ct));
  }
  return a;
}

AnyAutomaton load_automaton(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into a line/column pair.
    size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1, column = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error", line, column);
  }
  try {
    return automaton_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what(), 0, 0);
  }
}

CounterAutomaton load_counter_automaton(std::string_view text) {
  auto a = load_automaton(text);
  expect_kind<CounterAutomaton>(a, "counter automaton");
  return std::get<CounterAutomaton>(std::move(a));
}

Nfa load_nfa(std::string_view text) {
  auto a = load_automaton(text);
  expect_kind<Nfa>(a, "nfa");
  return std::get<Nfa>(std::move(a));
}

BuchiAutomaton load_buchi(std::string_view text) {
  auto a = load_automaton(text);
  expect_kind<BuchiAutomaton>(a, "buchi");
  return std::get<BuchiAutomaton>(std::move(a));
}

Json to_json(const CounterAutomaton& a) {
  Json doc;
  doc["kind"] = std::string(kind_tag(a.kind));
  doc["alphabet"] = a.alphabet.symbols();
  doc["states"] = a.states;
  doc["initial"] = id_list(a.states, a.initial);
  doc["counters"] = a.counters;
  if (a.finals) doc["finals"] = id_list(a.states, *a.finals);
  Json ts = Json::array();
  for (const auto& t : a.transitions) {
    Json ops = Json::object();
    for (size_t c = 0; c < a.counters.size(); ++c) ops[a.counters[c]] = op_name(t.ops[c]);
    ts.push_back({{"from", a.states[static_cast<size_t>(t.src)]},
                  {"label", label_json(a.alphabet, t.label)},
                  {"ops", ops},
                  {"to", a.states[static_cast<size_t>(t.dst)]}});
  }
  doc["transitions"] = ts;
  return doc;
}

Json to_json(const Nfa& a) {
  Json doc;
  doc["kind"] = "nfa";
  doc["alphabet"] = a.alphabet.symbols();
  doc["states"] = a.states;
  doc["initial"] = id_list(a.states, a.initial);
  doc["finals"] = id_list(a.states, a.finals);
  Json ts = Json::array();
  for (const auto& t : a.transitions) {
    ts.push_back({{"from", a.states[static_cast<size_t>(t.src)]},
                  {"label", label_json(a.alphabet, t.label)},
                  {"to", a.states[static_cast<size_t>(t.dst)]}});
  }
  doc["transitions"] = ts;
  return doc;
}

Json to_json(const BuchiAutomaton& a) {
  Json doc;
  doc["kind"] = "buchi";
  doc["alphabet"] = a.alphabet.symbols();
  doc["states"] = a.states;
  doc["initial"] = id_list(a.states, a.initial);
  Json acc = Json::array();
  for (const auto& f : a.acceptance) acc.push_back(id_list(a.states, f));
  doc["acceptance"] = acc;
  Json ts = Json::array();
  for (const auto& t : a.transitions) {
    ts.push_back({{"from", a.states[static_cast<size_t>(t.src)]},
                  {"label", label_json(a.alphabet, t.label)},
                  {"to", a.states[static_cast<size_t>(t.dst)]}});
  }
  doc["transitions"] = ts;
  return doc;
}

Json to_json(const AnyAutomaton& a) {
  return std::visit([](const auto& x) { return to_json(x); }, a);
}

std::string dump_automaton(const AnyAutomaton& a) { return to_json(a).dump(2) + "\n"; }

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string dot_label(const Alphabet& alphabet, SymbolId label) {
  return label == kEpsilon ? "\xCE\xB5" : dot_escape(alphabet.name(label));
}

void dot_header(std::ostringstream& os, const std::vector<std::string>& states,
                const std::vector<StateId>& initial, const std::vector<bool>& accepting) {
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (size_t q = 0; q < states.size(); ++q) {
    os << "  s" << q << " [label=\"" << dot_escape(states[q]) << "\"";
    if (accepting[q]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (StateId q : initial) {
    os << "  init" << q << " [shape=point];\n  init" << q << " -> s" << q << ";\n";
  }
}

}  // namespace

std::string export_dot(const CounterAutomaton& a) {
  std::ostringstream os;
  std::vector<bool> accepting(a.states.size(), false);
  if (a.finals) {
    for (StateId q : *a.finals) accepting[static_cast<size_t>(q)] = true;
  }
  dot_header(os, a.states, a.initial, accepting);
  for (const auto& t : a.transitions) {
    std::string label = dot_label(a.alphabet, t.label);
    std::string ops;
    for (size_t c = 0; c < a.counters.size(); ++c) {
      if (t.ops[c] == CounterOp::Nil) continue;
      ops += ops.empty() ? " / " : ", ";
      ops += dot_escape(a.counters[c]) + ":" + op_name(t.ops[c]);
    }
    os << "  s" << t.src << " -> s" << t.dst << " [label=\"" << label << ops << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const Nfa& a) {
  std::ostringstream os;
  std::vector<bool> accepting(a.states.size(), false);
  for (StateId q : a.finals) accepting[static_cast<size_t>(q)] = true;
  dot_header(os, a.states, a.initial, accepting);
  for (const auto& t : a.transitions) {
    os << "  s" << t.src << " -> s" << t.dst << " [label=\"" << dot_label(a.alphabet, t.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const BuchiAutomaton& a) {
  std::ostringstream os;
  std::vector<bool> accepting(a.states.size(), false);
  // With a single set the accepting states are drawn doubled; generalized
  // sets are listed in the node tooltip.
  if (a.acceptance.size() == 1) {
    for (StateId q : a.acceptance.front()) accepting[static_cast<size_t>(q)] = true;
  }
  dot_header(os, a.states, a.initial, accepting);
  if (a.acceptance.size() > 1) {
    for (size_t i = 0; i < a.acceptance.size(); ++i) {
      for (StateId q : a.acceptance[i]) os << "  s" << q << " [xlabel=\"F" << i << "\"];\n";
    }
  }
  for (const auto& t : a.transitions) {
    os << "  s" << t.src << " -> s" << t.dst << " [label=\"" << dot_label(a.alphabet, t.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const AnyAutomaton& a) {
  return std::visit([](const auto& x) { return export_dot(x); }, a);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace omegasep
