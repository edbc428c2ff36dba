#pragma once

// Dealternation, determinization, minimization and language queries.
//
// Letters of the NFA/DFA are (valuation, last flag) pairs. The `last` flag is
// part of every letter; a word is well formed when the flag is set on its
// final letter and nowhere else. The DFA construction routes every
// last-flagged letter into one of two sinks (accept-and-stop or reject), so the
// language of a DFA over arbitrary letter sequences is exactly its language
// of well-formed words.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynaut/afw.hpp"
#include "dynaut/formula.hpp"
#include "dynaut/semantics.hpp"

namespace dynaut {

struct NfaTransition {
  Cube cond;
  LastCondition last = LastCondition::Unconstrained;
  int target = 0;

  friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

struct NfaState {
  /// Sorted AFW state indices that must all accept the remaining suffix.
  std::vector<int> obligations;
  std::vector<NfaTransition> transitions;
};

/// Nondeterministic automaton over obligation sets of an AFW. The state with
/// no obligations is absorbing and accepting.
struct Nfa {
  SymbolTable symbols;
  std::vector<NfaState> states;
  int initial = 0;
  /// Index of the empty obligation set, or -1 when unreachable.
  int discharged = -1;
  /// Labels of the source AFW states, for debugging output.
  std::vector<std::string> afw_labels;
};

class Dfa {
 public:
  Dfa() = default;
  Dfa(SymbolTable symbols, std::vector<Cube> minterms, int initial, std::vector<int> table,
      std::vector<bool> accepting, std::vector<std::string> labels);

  const SymbolTable& symbols() const { return symbols_; }
  /// Disjoint cubes covering every valuation of the symbol table.
  const std::vector<Cube>& minterms() const { return minterms_; }
  std::size_t state_count() const { return accepting_.size(); }
  std::size_t letter_count() const { return 2 * minterms_.size(); }
  int initial() const { return initial_; }
  bool accepting(int s) const { return accepting_[static_cast<std::size_t>(s)]; }
  const std::string& label(int s) const { return labels_[static_cast<std::size_t>(s)]; }

  static std::size_t letter(std::size_t minterm, bool last) { return 2 * minterm + (last ? 1 : 0); }
  int next(int s, std::size_t minterm, bool last) const {
    return table_[static_cast<std::size_t>(s) * letter_count() + letter(minterm, last)];
  }
  /// Minterm containing the letter (sorted atom ids).
  std::size_t minterm_of(const std::vector<int>& letter) const;

  /// States that accept no nonempty well-formed continuation and are not
  /// accepting themselves.
  std::vector<bool> dead_states() const;
  /// live[s]: some nonempty well-formed word is accepted from s.
  std::vector<bool> live_states() const;

 private:
  SymbolTable symbols_;
  std::vector<Cube> minterms_;
  int initial_ = 0;
  std::vector<int> table_;
  std::vector<bool> accepting_;
  std::vector<std::string> labels_;
};

/// Partitions all valuations into cubes on which every condition in `conds`
/// is constant. Deterministic; returns {true} when `conds` is empty.
std::vector<Cube> minterms_for(const std::vector<Cube>& conds);

Nfa afw_to_nfa(const Afw& a);
bool nfa_accepts(const Nfa& n, const Trace& t);
Stats nfa_stats(const Nfa& n);

Dfa nfa_to_dfa(const Nfa& n);
/// Hopcroft partition refinement after pruning unreachable states; states are
/// renumbered breadth-first from the initial state.
Dfa minimize(const Dfa& d);
bool dfa_accepts(const Dfa& d, const Trace& t);
Stats dfa_stats(const Dfa& d);

/// Shorthand for minimize(nfa_to_dfa(afw_to_nfa(compile_afw(f)))).
Dfa compile_min_dfa(const Formula& f);

bool is_empty(const Dfa& d);
/// A minimum-length accepted trace; each letter holds the positive literals of
/// its minterm.
std::optional<Trace> shortest_witness(const Dfa& d);

struct EquivalenceResult {
  bool equivalent = true;
  /// Shortest trace accepted by exactly one side.
  std::optional<Trace> counterexample;
};

/// Language equivalence over well-formed words; symbol tables are merged by
/// atom name.
EquivalenceResult equivalent(const Dfa& a, const Dfa& b);

/// Index of the first letter after which no accepted continuation of the
/// trace's remaining length exists; nullopt when the trace is accepted.
std::optional<std::size_t> first_failure(const Dfa& d, const Trace& t);

}  // namespace dynaut
