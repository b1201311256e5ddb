#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omegasep/harness.hpp"
#include "omegasep/io.hpp"
#include "omegasep/monoid.hpp"
#include "omegasep/nfa.hpp"
#include "omegasep/omega.hpp"
#include "omegasep/profinite.hpp"
#include "omegasep/values.hpp"

namespace omegasep::cli {

namespace {

// Error raised for malformed command lines that CLI11 cannot detect itself.
struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string mode;
  std::string output;
  std::string dot;
  std::uint64_t seed = 0;
  std::string grid;
  std::vector<std::string> inputs;
  std::string prefix;
  std::string period;
  std::string route = "reduction";
  std::string certificate;
  bool no_certificate = false;
};

Kind parse_mode(const std::string& mode) {
  if (mode == "B") return Kind::B;
  if (mode == "S") return Kind::S;
  if (mode == "wB") return Kind::OmegaB;
  if (mode == "wS") return Kind::OmegaS;
  throw UsageError("unknown mode '" + mode + "' (expected B, S, wB or wS)");
}

CounterAutomaton load_counter(const Options& o, const std::string& path, const std::vector<Kind>& allowed) {
  CounterAutomaton a = load_counter_automaton(read_file(path));
  if (!o.mode.empty() && parse_mode(o.mode) != a.kind) {
    throw UsageError("'" + path + "' is a " + std::string(kind_tag(a.kind)) + " automaton but --mode is " + o.mode);
  }
  bool ok = false;
  for (Kind k : allowed) ok = ok || k == a.kind;
  if (!ok) throw UsageError("'" + path + "': automata of kind " + std::string(kind_tag(a.kind)) + " are not accepted here");
  return a;
}

void require_inputs(const Options& o, size_t n, const std::string& usage) {
  if (o.inputs.size() != n) throw UsageError("expected " + usage);
}

std::pair<int, int> parse_grid(const std::string& grid, std::pair<int, int> fallback) {
  if (grid.empty()) return fallback;
  const auto comma = grid.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(grid);
    int px = std::stoi(grid.substr(0, comma));
    int py = std::stoi(grid.substr(comma + 1));
    if (px < 0 || py < 1) throw std::invalid_argument(grid);
    return {px, py};
  } catch (const std::exception&) {
    throw UsageError("--grid expects px,py with px >= 0 and py >= 1");
  }
}

// Writes the automaton to -o (or stdout) and its DOT rendering to --dot.
void emit(const Options& o, const AnyAutomaton& a, std::ostream& out) {
  const std::string text = dump_automaton(a);
  if (o.output.empty()) {
    out << text << '\n';
  } else {
    write_file(o.output, text + "\n");
  }
  if (!o.dot.empty()) write_file(o.dot, export_dot(a));
}

std::string certificate_path(const Options& o) {
  if (!o.certificate.empty()) return o.certificate;
  if (o.output.empty()) return {};
  const std::string suffix = ".json";
  std::string base = o.output;
  if (base.size() > suffix.size() && base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
    base.resize(base.size() - suffix.size());
  }
  return base + ".cert.json";
}

int cmd_value(const Options& o, std::ostream& out) {
  require_inputs(o, 2, "an automaton and a word");
  auto a = load_counter(o, o.inputs[0], {Kind::B, Kind::S});
  out << value_of(a, a.alphabet.parse(o.inputs[1])).to_string() << '\n';
  return 0;
}

int cmd_cutoff(const Options& o, std::ostream& out) {
  require_inputs(o, 2, "an automaton and a threshold n");
  auto a = load_counter(o, o.inputs[0], {Kind::B, Kind::S});
  std::uint64_t n = 0;
  try {
    n = std::stoull(o.inputs[1]);
  } catch (const std::exception&) {
    throw UsageError("threshold must be a natural number");
  }
  emit(o, a.kind == Kind::B ? cutoff_B(a, n) : cutoff_S(a, n), out);
  return 0;
}

int cmd_monoid(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one automaton");
  AnyAutomaton any = load_automaton(read_file(o.inputs[0]));
  auto m = std::visit([](const auto& a) { return TransitionMonoid::of(a); }, any);
  const auto& states = std::visit([](const auto& a) -> const std::vector<std::string>& { return a.states; }, any);
  Json doc;
  doc["size"] = m.size();
  Json elements = Json::array();
  for (ElementId id = 0; id < static_cast<ElementId>(m.size()); ++id) {
    Json e;
    e["id"] = id;
    e["relation"] = m.element(id).to_string(states);
    e["witness"] = m.alphabet().render(m.witness(id));
    e["idempotent"] = m.is_idempotent(id);
    elements.push_back(std::move(e));
  }
  doc["elements"] = std::move(elements);
  Json linked = Json::array();
  for (const auto& t : linked_pairs(m)) linked.push_back(Json::array({t.s, t.e}));
  doc["linked_pairs"] = std::move(linked);
  const std::string text = doc.dump(2);
  if (o.output.empty()) {
    out << text << '\n';
  } else {
    write_file(o.output, text + "\n");
  }
  return 0;
}

int cmd_empty(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one automaton");
  auto a = load_counter(o, o.inputs[0], {Kind::B, Kind::S, Kind::OmegaB, Kind::OmegaS});
  const bool empty = is_omega(a.kind) ? omega_is_empty(a) : is_empty_T(a);
  out << (empty ? "true" : "false") << '\n';
  return 0;
}

int cmd_disjoint(const Options& o, std::ostream& out) {
  require_inputs(o, 2, "two automata");
  const std::vector<Kind> all = {Kind::B, Kind::S, Kind::OmegaB, Kind::OmegaS};
  auto a1 = load_counter(o, o.inputs[0], all);
  auto a2 = load_counter(o, o.inputs[1], all);
  if (a1.kind != a2.kind) throw UsageError("both automata must have the same kind");
  require_same_alphabet(a1.alphabet, a2.alphabet, "disjoint");
  if (is_omega(a1.kind)) {
    require_omega_disjoint(a1, a2, "disjoint");
  } else if (!is_disjoint_T(a1, a2)) {
    throw NotDisjoint("disjoint: the languages intersect");
  }
  out << "true\n";
  return 0;
}

int cmd_separate_profinite(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 2, "two automata");
  auto a1 = load_counter(o, o.inputs[0], {Kind::B, Kind::S});
  auto a2 = load_counter(o, o.inputs[1], {Kind::B, Kind::S});
  if (a1.kind != a2.kind) throw UsageError("both automata must have the same kind");
  if (a1.kind == Kind::B) {
    emit(o, separator_B(a1, a2), out);
  } else {
    auto res = separator_S(a1, a2);
    err << "n0 = " << res.n0 << '\n';
    emit(o, res.nfa, out);
  }
  return 0;
}

int cmd_separate_omega(const Options& o, std::ostream& out) {
  require_inputs(o, 2, "two automata");
  auto a1 = load_counter(o, o.inputs[0], {Kind::OmegaB, Kind::OmegaS});
  auto a2 = load_counter(o, o.inputs[1], {Kind::OmegaB, Kind::OmegaS});
  if (a1.kind != a2.kind) throw UsageError("both automata must have the same kind");
  auto res = separator_omega(a1, a2);
  emit(o, res.sep, out);
  const std::string cert = certificate_path(o);
  if (!cert.empty() && !o.no_certificate) {
    write_file(cert, certificate_to_json(res.certificate, a1, a2).dump(2) + "\n");
  }
  return 0;
}

int cmd_closure(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one automaton");
  auto a = load_counter(o, o.inputs[0], {Kind::OmegaB});
  emit(o, closure_automaton(a), out);
  return 0;
}

int cmd_member(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one automaton");
  AnyAutomaton any = load_automaton(read_file(o.inputs[0]));
  if (auto* b = std::get_if<BuchiAutomaton>(&any)) {
    if (!o.mode.empty()) throw UsageError("--mode does not apply to Buchi automata");
    out << (buchi_up_membership(*b, make_up_word(b->alphabet, o.prefix, o.period)) ? "true" : "false") << '\n';
    return 0;
  }
  auto a = load_counter(o, o.inputs[0], {Kind::OmegaB, Kind::OmegaS});
  MembershipRoute route;
  if (o.route == "reduction") {
    route = MembershipRoute::Reduction;
  } else if (o.route == "safety") {
    route = MembershipRoute::SafetyProduct;
  } else if (o.route == "closure") {
    route = MembershipRoute::Closure;
  } else {
    throw UsageError("unknown route '" + o.route + "'");
  }
  out << (up_membership(a, make_up_word(a.alphabet, o.prefix, o.period), route) ? "true" : "false") << '\n';
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  require_inputs(o, 3, "two automata and a separator");
  auto a1 = load_counter(o, o.inputs[0], {Kind::OmegaB, Kind::OmegaS});
  auto a2 = load_counter(o, o.inputs[1], {Kind::OmegaB, Kind::OmegaS});
  auto sep = load_buchi(read_file(o.inputs[2]));
  std::optional<SeparatorCertificate> cert;
  std::string cert_path = o.certificate;
  if (cert_path.empty()) {
    Options probe = o;
    probe.output = o.inputs[2];
    cert_path = certificate_path(probe);
    try {
      read_file(cert_path);
    } catch (const Error&) {
      cert_path.clear();
    }
  }
  if (!cert_path.empty() && !o.no_certificate) {
    Json doc;
    try {
      doc = Json::parse(read_file(cert_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("certificate: ") + e.what(), 0, 0);
    }
    cert = certificate_from_json(doc, a1, a2);
  }
  VerifyOptions vo;
  std::tie(vo.px, vo.py) = parse_grid(o.grid, {vo.px, vo.py});
  vo.seed = o.seed;
  auto report = verify_separation(a1, a2, sep, cert ? &*cert : nullptr, vo);
  const std::string text = report.to_json().dump(2);
  if (o.output.empty()) {
    out << text << '\n';
  } else {
    write_file(o.output, text + "\n");
  }
  return report.passed() ? 0 : 1;
}

int cmd_dot(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "one automaton");
  const std::string text = export_dot(load_automaton(read_file(o.inputs[0])));
  if (o.output.empty()) {
    out << text;
  } else {
    write_file(o.output, text);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separators for omega-B and omega-S regular languages", "omega-sep"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
    const char* inputs;
  };
  const std::vector<Spec> specs = {
      {"value", "value of a finite word: value FILE WORD", "FILE WORD"},
      {"cutoff", "NFA of the cutoff language at threshold n: cutoff FILE N", "FILE N"},
      {"monoid", "transition monoid and linked pairs: monoid FILE", "FILE"},
      {"empty", "emptiness of a B, S, wB or wS automaton: empty FILE", "FILE"},
      {"disjoint", "disjointness of two automata of one kind: disjoint FILE1 FILE2", "FILE1 FILE2"},
      {"separate-profinite", "NFA separating two B (or two S) automata", "FILE1 FILE2"},
      {"separate-omega", "Buchi separator and certificate for two wB (or two wS) automata", "FILE1 FILE2"},
      {"closure", "closure Buchi automaton of an wB automaton", "FILE"},
      {"member", "membership of prefix.period^omega", "FILE"},
      {"verify", "check a separator: verify FILE1 FILE2 SEP", "FILE1 FILE2 SEP"},
      {"dot", "Graphviz rendering of any automaton", "FILE"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("inputs", o.inputs, s.inputs)->required();
    sub->add_option("--mode", o.mode, "automaton kind: B, S, wB or wS");
    sub->add_option("-o,--output", o.output, "output file");
    sub->add_option("--dot", o.dot, "also write a DOT rendering");
    sub->add_option("--seed", o.seed, "seed recorded in reports");
    sub->add_option("--grid", o.grid, "UP-word grid bounds px,py");
    if (std::string(s.name) == "member") {
      sub->add_option("--prefix", o.prefix, "finite prefix x");
      sub->add_option("--period", o.period, "non-empty period y")->required();
      sub->add_option("--route", o.route, "reduction, safety or closure");
    }
    if (std::string(s.name) == "separate-omega" || std::string(s.name) == "verify") {
      sub->add_option("--certificate", o.certificate, "certificate file");
      sub->add_flag("--no-certificate", o.no_certificate, "skip the certificate");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "value") return cmd_value(o, out);
    if (name == "cutoff") return cmd_cutoff(o, out);
    if (name == "monoid") return cmd_monoid(o, out);
    if (name == "empty") return cmd_empty(o, out);
    if (name == "disjoint") return cmd_disjoint(o, out);
    if (name == "separate-profinite") return cmd_separate_profinite(o, out, err);
    if (name == "separate-omega") return cmd_separate_omega(o, out);
    if (name == "closure") return cmd_closure(o, out);
    if (name == "member") return cmd_member(o, out);
    if (name == "verify") return cmd_verify(o, out);
    if (name == "dot") return cmd_dot(o, out);
  } catch (const NotDisjoint& e) {
    err << "omega-sep: " << e.what() << '\n';
    if (name == "disjoint") out << "false\n";
    return 1;
  } catch (const SizeGuardExceeded& e) {
    err << "omega-sep: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "omega-sep: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace omegasep::cli
