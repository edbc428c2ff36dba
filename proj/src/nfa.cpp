#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "dynaut/fsa.hpp"

namespace dynaut {

namespace {

// Conjunction of one alternative per obligation. The empty set yields the
// single unconditional self-loop.
std::vector<NfaTransition> combine(const Afw& a, const std::vector<int>& obligations,
                                   const std::function<int(const std::vector<int>&)>& intern) {
  struct Partial {
    Cube cond;
    LastCondition last;
    std::set<int> successors;
  };
  std::vector<Partial> partials{Partial{Cube{}, LastCondition::Unconstrained, {}}};
  for (int q : obligations) {
    std::vector<Partial> next;
    for (const auto& p : partials) {
      for (const auto& t : a.states[static_cast<std::size_t>(q)].transitions) {
        auto cond = intersect(p.cond, t.cond);
        if (!cond) continue;
        LastCondition last = p.last;
        if (last == LastCondition::Unconstrained) {
          last = t.last;
        } else if (t.last != LastCondition::Unconstrained && t.last != last) {
          continue;
        }
        Partial merged{*cond, last, p.successors};
        merged.successors.insert(t.successors.begin(), t.successors.end());
        next.push_back(std::move(merged));
      }
    }
    partials = std::move(next);
    if (partials.empty()) break;
  }

  std::vector<NfaTransition> out;
  for (const auto& p : partials) {
    NfaTransition t{p.cond, p.last, intern(std::vector<int>(p.successors.begin(), p.successors.end()))};
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Nfa afw_to_nfa(const Afw& a) {
  Nfa n;
  n.symbols = a.symbols;
  for (const auto& s : a.states) n.afw_labels.push_back(s.label);

  std::map<std::vector<int>, int> index;
  std::deque<int> queue;
  auto intern = [&](const std::vector<int>& obligations) {
    auto [it, fresh] = index.emplace(obligations, static_cast<int>(n.states.size()));
    if (fresh) {
      n.states.push_back(NfaState{obligations, {}});
      if (obligations.empty()) n.discharged = it->second;
      queue.push_back(it->second);
    }
    return it->second;
  };

  n.initial = intern({a.initial});
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto obligations = n.states[static_cast<std::size_t>(id)].obligations;
    auto transitions = combine(a, obligations, intern);
    n.states[static_cast<std::size_t>(id)].transitions = std::move(transitions);
  }
  return n;
}

bool nfa_accepts(const Nfa& n, const Trace& t) {
  std::set<int> current{n.initial};
  for (std::size_t i = 0; i < t.length(); ++i) {
    std::vector<int> letter = letter_ids(n.symbols, t[i]);
    std::set<int> next;
    for (int s : current)
      for (const auto& tr : n.states[static_cast<std::size_t>(s)].transitions)
        if (last_matches(tr.last, t.is_last(i)) && satisfies(letter, tr.cond)) next.insert(tr.target);
    current = std::move(next);
    if (current.empty()) return false;
  }
  return n.discharged >= 0 && current.contains(n.discharged);
}

Stats nfa_stats(const Nfa& n) {
  Stats s;
  s.alphabet = n.symbols.size();
  s.states = n.states.size();
  for (const auto& st : n.states) s.transitions += st.transitions.size();
  s.max_successors = s.transitions > 0 ? 1 : 0;
  return s;
}

}  // namespace dynaut
