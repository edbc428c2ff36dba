#pragma once

// Serialization: declarative ASP facts, GraphViz DOT, and MONA programs.
//
// Fact schema (one fact per line):
//
//   prop(Id,name).                  symbol table
//   state(Id,"label").              states with their formula text
//   initial_state(Id).
//   delta(State,T).                 transition T leaves State
//   delta(State,T,pos,PropId).      condition: atom holds
//   delta(State,T,neg,PropId).      condition: atom does not hold
//   delta(State,T,pos,last).        condition: final position
//   delta(State,T,neg,last).        condition: not the final position
//   delta(State,T,succ,S).          universal successor
//
// Transition ids are dense from 0 across the whole automaton.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynaut/afw.hpp"
#include "dynaut/formula.hpp"
#include "dynaut/fsa.hpp"

namespace dynaut {

struct ViewTransition {
  int id = 0;
  int source = 0;
  std::vector<int> pos;
  std::vector<int> neg;
  LastCondition last = LastCondition::Unconstrained;
  std::vector<int> successors;

  friend bool operator==(const ViewTransition&, const ViewTransition&) = default;
};

/// Uniform read-only projection of an AFW, NFA or DFA onto the alternating
/// run semantics: an obligation picks one enabled transition per letter and
/// the word is accepted when no obligation is left after the final letter.
struct AutomatonView {
  SymbolTable symbols;
  std::vector<std::string> state_labels;
  int initial = 0;
  std::vector<ViewTransition> transitions;

  friend bool operator==(const AutomatonView&, const AutomatonView&) = default;
};

AutomatonView view(const Afw& a);
/// The discharged state disappears; transitions into it get no successors.
AutomatonView view(const Nfa& n);
/// Only live states (plus the initial one) are kept. Last-flagged letters into
/// an accepting state become discharging transitions.
AutomatonView view(const Dfa& d);

/// Inverse of view(const Afw&): an AFW with the view's states and transitions.
Afw to_afw(const AutomatonView& v);

std::string emit_asp_facts(const AutomatonView& v);

/// Reads the fact schema above; `%` starts a comment. Throws InputError on a
/// malformed fact, a dangling reference or a repeated initial_state.
Afw parse_asp_facts(std::string_view text);

/// GraphViz digraph. Transitions with zero or several successors go through a
/// point-shaped junction node.
std::string emit_dot(const AutomatonView& v);

/// MONA variable name for an atom.
std::string mona_variable(const std::string& atom);

/// MONA M2L-Str program whose models are the nonempty traces satisfying `f`.
/// Free second-order variables follow symbols_of(f).
std::string emit_mona(const Formula& f);

/// Parses MONA's GraphViz automaton output (`mona -gw`). Edge labels carry
/// one character per free variable, in the order of `symbols`.
Dfa parse_mona_dot(std::string_view text, const SymbolTable& symbols);

/// MONA executable from `flag`, then $DYNAUT_MONA, then `mona` on PATH.
std::optional<std::filesystem::path> find_mona(const std::optional<std::string>& flag);

/// Runs MONA on `program` and returns its DOT output. Throws ExternalToolError.
std::string run_mona(const std::filesystem::path& mona, const std::string& program);

}  // namespace dynaut
