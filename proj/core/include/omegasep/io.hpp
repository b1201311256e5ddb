#pragma once

// JSON document format and Graphviz export.
//
//   { "kind": "B" | "S" | "wB" | "wS" | "nfa" | "buchi",
//     "alphabet": [..], "states": [..], "initial": [..],
//     "counters": [..],            // counter kinds only
//     "finals": [..],              // B, S, nfa
//     "acceptance": [[..], ..],    // buchi
//     "transitions": [ {"from": q, "label": a | null, "ops": {c: "nil"|"inc"|"reset"}, "to": q}, .. ] }

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "omegasep/automaton.hpp"

namespace omegasep {

using Json = nlohmann::ordered_json;

using AnyAutomaton = std::variant<CounterAutomaton, Nfa, BuchiAutomaton>;

AnyAutomaton load_automaton(std::string_view text);
AnyAutomaton automaton_from_json(const Json& doc);

/// Convenience loaders that also check the document kind.
CounterAutomaton load_counter_automaton(std::string_view text);
Nfa load_nfa(std::string_view text);
BuchiAutomaton load_buchi(std::string_view text);

Json to_json(const CounterAutomaton& a);
Json to_json(const Nfa& a);
Json to_json(const BuchiAutomaton& a);
Json to_json(const AnyAutomaton& a);

std::string dump_automaton(const AnyAutomaton& a);

std::string export_dot(const CounterAutomaton& a);
std::string export_dot(const Nfa& a);
std::string export_dot(const BuchiAutomaton& a);
std::string export_dot(const AnyAutomaton& a);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace omegasep
