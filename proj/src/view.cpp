#include <optional>

#include "dynaut/error.hpp"
#include "dynaut/export.hpp"

namespace dynaut {

AutomatonView view(const Afw& a) {
  AutomatonView v;
  v.symbols = a.symbols;
  v.initial = a.initial;
  int id = 0;
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    v.state_labels.push_back(a.states[s].label);
    for (const auto& t : a.states[s].transitions)
      v.transitions.push_back(ViewTransition{id++, static_cast<int>(s), t.cond.pos, t.cond.neg, t.last, t.successors});
  }
  return v;
}

AutomatonView view(const Nfa& n) {
  AutomatonView v;
  v.symbols = n.symbols;
  std::vector<int> renumber(n.states.size(), -1);
  for (std::size_t s = 0; s < n.states.size(); ++s) {
    if (static_cast<int>(s) == n.discharged) continue;
    renumber[s] = static_cast<int>(v.state_labels.size());
    std::string label = "{";
    const auto& obligations = n.states[s].obligations;
    for (std::size_t k = 0; k < obligations.size(); ++k) {
      if (k) label += ", ";
      label += n.afw_labels[static_cast<std::size_t>(obligations[k])];
    }
    v.state_labels.push_back(label + "}");
  }
  v.initial = renumber[static_cast<std::size_t>(n.initial)];
  int id = 0;
  for (std::size_t s = 0; s < n.states.size(); ++s) {
    if (renumber[s] < 0) continue;
    for (const auto& t : n.states[s].transitions) {
      ViewTransition vt{id++, renumber[s], t.cond.pos, t.cond.neg, t.last, {}};
      if (t.target != n.discharged) vt.successors = {renumber[static_cast<std::size_t>(t.target)]};
      v.transitions.push_back(std::move(vt));
    }
  }
  return v;
}

AutomatonView view(const Dfa& d) {
  AutomatonView v;
  v.symbols = d.symbols();
  auto live = d.live_states();
  std::vector<int> renumber(d.state_count(), -1);
  for (std::size_t s = 0; s < d.state_count(); ++s) {
    if (!live[s] && static_cast<int>(s) != d.initial()) continue;
    renumber[s] = static_cast<int>(v.state_labels.size());
    v.state_labels.push_back(d.label(static_cast<int>(s)));
  }
  v.initial = renumber[static_cast<std::size_t>(d.initial())];
  int id = 0;
  for (std::size_t s = 0; s < d.state_count(); ++s) {
    if (renumber[s] < 0) continue;
    for (std::size_t m = 0; m < d.minterms().size(); ++m) {
      const Cube& cube = d.minterms()[m];
      int next = d.next(static_cast<int>(s), m, false);
      if (live[static_cast<std::size_t>(next)]) {
        v.transitions.push_back(ViewTransition{id++, renumber[s], cube.pos, cube.neg, LastCondition::Forbidden,
                                               {renumber[static_cast<std::size_t>(next)]}});
      }
      if (d.accepting(d.next(static_cast<int>(s), m, true))) {
        v.transitions.push_back(
            ViewTransition{id++, renumber[s], cube.pos, cube.neg, LastCondition::Required, {}});
      }
    }
  }
  return v;
}

Afw to_afw(const AutomatonView& v) {
  Afw a;
  a.symbols = v.symbols;
  a.initial = v.initial;
  for (const auto& label : v.state_labels) {
    std::optional<Formula> formula;
    try {
      formula = parse_formula(label);
    } catch (const InputError&) {
    }
    a.states.push_back(AfwState{label, formula, {}});
  }
  for (const auto& t : v.transitions)
    a.states[static_cast<std::size_t>(t.source)].transitions.push_back(Transition{Cube{t.pos, t.neg}, t.last, t.successors});
  return a;
}

}  // namespace dynaut
