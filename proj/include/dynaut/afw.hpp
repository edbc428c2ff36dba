#pragma once

// Alternating finite automata on finite words.
//
// Transitions are kept in disjunctive normal form: each state owns a list of
// alternatives, each alternative is a conjunction of literal conditions on the
// current letter plus a universal set of successor states that must all accept
// the remaining suffix. An alternative with no successors discharges the
// obligation on the letter it reads.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynaut/formula.hpp"
#include "dynaut/semantics.hpp"

namespace dynaut {

enum class LastCondition : unsigned char { Unconstrained, Required, Forbidden };

/// Conjunction of literals over symbol-table identifiers. Both lists are
/// sorted and disjoint.
struct Cube {
  std::vector<int> pos;
  std::vector<int> neg;

  bool is_true() const { return pos.empty() && neg.empty(); }
  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

/// Conjunction of two cubes; nullopt when they contradict.
std::optional<Cube> intersect(const Cube& a, const Cube& b);
/// True when every valuation satisfying `a` satisfies `b`.
bool implies(const Cube& a, const Cube& b);
/// True when no valuation satisfies both.
bool disjoint(const Cube& a, const Cube& b);
/// Whether the letter (atom ids present, sorted) satisfies `c`.
bool satisfies(const std::vector<int>& letter, const Cube& c);
bool last_matches(LastCondition cond, bool is_last);

struct Transition {
  Cube cond;
  LastCondition last = LastCondition::Unconstrained;
  /// Sorted state indices.
  std::vector<int> successors;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct AfwState {
  std::string label;
  /// Closure formula, when the automaton was compiled from one.
  std::optional<Formula> formula;
  std::vector<Transition> transitions;
};

struct Afw {
  SymbolTable symbols;
  std::vector<AfwState> states;
  int initial = 0;
};

struct Stats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t max_successors = 0;
  std::size_t alphabet = 0;

  friend bool operator==(const Stats&, const Stats&) = default;
};

/// Compiles `f` (desugared and normalized internally). States are discovered
/// breadth-first from the initial state.
Afw compile_afw(const Formula& f);

/// Same as compile_afw, using `symbols` as the starting symbol table.
Afw compile_afw(const Formula& f, SymbolTable symbols);

/// Letter as sorted atom identifiers; atoms unknown to `symbols` are dropped.
std::vector<int> letter_ids(const SymbolTable& symbols, const Letter& letter);

/// Run acceptance: every open obligation picks one enabled alternative per
/// letter; the trace is accepted when no obligation remains after the last
/// letter.
bool afw_accepts(const Afw& a, const Trace& t);

/// Sizes of the part reachable from the initial state.
Stats afw_stats(const Afw& a);

/// Indices of states reachable from the initial state, in BFS order.
std::vector<int> reachable_states(const Afw& a);

}  // namespace dynaut
