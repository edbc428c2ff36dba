#include "dynaut/afw.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace dynaut {

// ---------------------------------------------------------------------------
// Cubes

std::optional<Cube> intersect(const Cube& a, const Cube& b) {
  Cube out;
  std::set_union(a.pos.begin(), a.pos.end(), b.pos.begin(), b.pos.end(), std::back_inserter(out.pos));
  std::set_union(a.neg.begin(), a.neg.end(), b.neg.begin(), b.neg.end(), std::back_inserter(out.neg));
  std::vector<int> clash;
  std::set_intersection(out.pos.begin(), out.pos.end(), out.neg.begin(), out.neg.end(), std::back_inserter(clash));
  if (!clash.empty()) return std::nullopt;
  return out;
}

bool implies(const Cube& a, const Cube& b) {
  return std::includes(a.pos.begin(), a.pos.end(), b.pos.begin(), b.pos.end()) &&
         std::includes(a.neg.begin(), a.neg.end(), b.neg.begin(), b.neg.end());
}

bool disjoint(const Cube& a, const Cube& b) { return !intersect(a, b).has_value(); }

bool satisfies(const std::vector<int>& letter, const Cube& c) {
  for (int p : c.pos)
    if (!std::binary_search(letter.begin(), letter.end(), p)) return false;
  for (int n : c.neg)
    if (std::binary_search(letter.begin(), letter.end(), n)) return false;
  return true;
}

bool last_matches(LastCondition cond, bool is_last) {
  switch (cond) {
    case LastCondition::Unconstrained:
      return true;
    case LastCondition::Required:
      return is_last;
    case LastCondition::Forbidden:
      return !is_last;
  }
  return false;
}

std::vector<int> letter_ids(const SymbolTable& symbols, const Letter& letter) {
  std::vector<int> ids;
  for (const auto& atom : letter)
    if (auto id = symbols.find(atom)) ids.push_back(*id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------
// Transition function

namespace {

struct Branch {
  Cube cond;
  LastCondition last = LastCondition::Unconstrained;
  std::vector<Formula> successors;  // sorted, unique

  friend bool operator==(const Branch&, const Branch&) = default;
};

using Branches = std::vector<Branch>;

std::optional<LastCondition> merge_last(LastCondition a, LastCondition b) {
  if (a == LastCondition::Unconstrained) return b;
  if (b == LastCondition::Unconstrained || a == b) return a;
  return std::nullopt;
}

void append_unique(Branches& out, Branch b) {
  if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
}

Branches disjunction(Branches a, const Branches& b) {
  for (const auto& x : b) append_unique(a, x);
  return a;
}

// Pairwise merge; contradictory pairs are dropped.
Branches product(const Branches& a, const Branches& b) {
  Branches out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      auto cond = intersect(x.cond, y.cond);
      if (!cond) continue;
      auto last = merge_last(x.last, y.last);
      if (!last) continue;
      Branch m{*cond, *last, {}};
      std::set_union(x.successors.begin(), x.successors.end(), y.successors.begin(), y.successors.end(),
                     std::back_inserter(m.successors));
      append_unique(out, std::move(m));
    }
  }
  return out;
}

Branch condition_only(Cube c) { return Branch{std::move(c), LastCondition::Unconstrained, {}}; }

class DeltaBuilder {
 public:
  explicit DeltaBuilder(SymbolTable& symbols) : symbols_(symbols) {}

  Branches delta(const Formula& f) {
    switch (f.kind()) {
      case Kind::True:
        return {Branch{}};
      case Kind::False:
        return {};
      case Kind::Atom:
        return {condition_only(Cube{{symbols_.add(f.name())}, {}})};
      case Kind::Not:
        if (f.operand().kind() != Kind::Atom) throw std::invalid_argument("delta: formula is not in NNF");
        return {condition_only(Cube{{}, {symbols_.add(f.operand().name())}})};
      case Kind::And:
        return product(delta(f.lhs()), delta(f.rhs()));
      case Kind::Or:
        return disjunction(delta(f.lhs()), delta(f.rhs()));
      case Kind::Diamond:
        return diamond(f.path(), f.operand());
      case Kind::Box:
        return box(f.path(), f.operand());
      default:
        throw std::invalid_argument("delta: formula is not in core form");
    }
  }

 private:
  // DNF of a propositional payload, optionally negated.
  Branches dnf(const Formula& f, bool negated) {
    switch (f.kind()) {
      case Kind::True:
        return negated ? Branches{} : Branches{Branch{}};
      case Kind::False:
        return negated ? Branches{Branch{}} : Branches{};
      case Kind::Atom: {
        int id = symbols_.add(f.name());
        return {condition_only(negated ? Cube{{}, {id}} : Cube{{id}, {}})};
      }
      case Kind::Not:
        return dnf(f.operand(), !negated);
      case Kind::And:
        return negated ? disjunction(dnf(f.lhs(), true), dnf(f.rhs(), true))
                       : product(dnf(f.lhs(), false), dnf(f.rhs(), false));
      case Kind::Or:
        return negated ? product(dnf(f.lhs(), true), dnf(f.rhs(), true))
                       : disjunction(dnf(f.lhs(), false), dnf(f.rhs(), false));
      default:
        throw std::invalid_argument("delta: step payload is not propositional");
    }
  }

  static Branches with_step(Branches cubes, LastCondition last, const std::optional<Formula>& successor) {
    Branches out;
    for (auto& b : cubes) {
      b.last = last;
      if (successor) b.successors = {*successor};
      append_unique(out, std::move(b));
    }
    return out;
  }

  bool marked(const Formula& f) const { return std::find(active_.begin(), active_.end(), f) != active_.end(); }

  Branches diamond(const Path& p, const Formula& body) {
    switch (p.kind()) {
      case PathKind::Prop:
        return with_step(dnf(p.formula(), false), LastCondition::Forbidden, body);
      case PathKind::Test:
        return product(delta(p.formula()), delta(body));
      case PathKind::Seq:
        return diamond(p.first(), Formula::diamond(p.second(), body));
      case PathKind::Alt:
        return disjunction(diamond(p.first(), body), diamond(p.second(), body));
      case PathKind::Star: {
        Formula self = Formula::diamond(p, body);
        // Looping back through tests alone never makes progress.
        if (marked(self)) return {};
        active_.push_back(self);
        Branches out = disjunction(delta(body), diamond(p.body(), self));
        active_.pop_back();
        return out;
      }
    }
    return {};
  }

  Branches box(const Path& p, const Formula& body) {
    switch (p.kind()) {
      case PathKind::Prop: {
        Branches out = dnf(p.formula(), true);
        out = disjunction(out, with_step(dnf(p.formula(), false), LastCondition::Required, std::nullopt));
        return disjunction(out, with_step(dnf(p.formula(), false), LastCondition::Forbidden, body));
      }
      case PathKind::Test:
        return disjunction(delta(nnf(Formula::negate(p.formula()))), delta(body));
      case PathKind::Seq:
        return box(p.first(), Formula::box(p.second(), body));
      case PathKind::Alt:
        return product(box(p.first(), body), box(p.second(), body));
      case PathKind::Star: {
        Formula self = Formula::box(p, body);
        if (marked(self)) return {Branch{}};
        active_.push_back(self);
        Branches out = product(delta(body), box(p.body(), self));
        active_.pop_back();
        return out;
      }
    }
    return {};
  }

  SymbolTable& symbols_;
  std::vector<Formula> active_;
};

// tt successors are dropped: every successor comes from a step that already
// forbids `last`, so a following letter exists and tt discharges on it.
// Alternatives requiring ff can never be completed.
Branches simplify(Branches in) {
  Branches out;
  for (auto& b : in) {
    bool dead = false;
    std::vector<Formula> kept;
    for (auto& s : b.successors) {
      if (s.kind() == Kind::False) dead = true;
      if (s.kind() != Kind::True) kept.push_back(s);
    }
    if (dead) continue;
    b.successors = std::move(kept);
    append_unique(out, std::move(b));
  }
  return out;
}

}  // namespace

Afw compile_afw(const Formula& f) { return compile_afw(f, symbols_of(f)); }

Afw compile_afw(const Formula& f, SymbolTable symbols) {
  Afw afw;
  Formula root = nnf(desugar(f));
  DeltaBuilder builder(symbols);

  std::unordered_map<Formula, int> index;
  std::deque<Formula> queue;
  auto intern = [&](const Formula& g) {
    auto [it, fresh] = index.emplace(g, static_cast<int>(afw.states.size()));
    if (fresh) {
      afw.states.push_back(AfwState{render(g), g, {}});
      queue.push_back(g);
    }
    return it->second;
  };

  afw.initial = intern(root);
  while (!queue.empty()) {
    Formula g = queue.front();
    queue.pop_front();
    int id = index.at(g);
    std::vector<Transition> transitions;
    for (const auto& b : simplify(builder.delta(g))) {
      Transition t{b.cond, b.last, {}};
      for (const auto& s : b.successors) t.successors.push_back(intern(s));
      std::sort(t.successors.begin(), t.successors.end());
      transitions.push_back(std::move(t));
    }
    afw.states[static_cast<std::size_t>(id)].transitions = std::move(transitions);
  }
  afw.symbols = std::move(symbols);
  return afw;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

using Obligations = std::vector<int>;  // sorted

// All obligation sets reachable from `current` on one letter.
void expand(const Afw& a, const Obligations& current, const std::vector<int>& letter, bool is_last,
            std::set<Obligations>& out) {
  std::vector<std::vector<const Transition*>> enabled;
  for (int q : current) {
    std::vector<const Transition*> options;
    for (const auto& t : a.states[static_cast<std::size_t>(q)].transitions)
      if (last_matches(t.last, is_last) && satisfies(letter, t.cond)) options.push_back(&t);
    if (options.empty()) return;
    enabled.push_back(std::move(options));
  }
  std::vector<std::size_t> choice(enabled.size(), 0);
  for (;;) {
    std::set<int> next;
    for (std::size_t k = 0; k < enabled.size(); ++k)
      for (int s : enabled[k][choice[k]]->successors) next.insert(s);
    out.emplace(next.begin(), next.end());
    std::size_t k = 0;
    for (; k < enabled.size(); ++k) {
      if (++choice[k] < enabled[k].size()) break;
      choice[k] = 0;
    }
    if (k == enabled.size()) break;
  }
}

// Drops every set that is a strict superset of another one in the frontier.
std::set<Obligations> prune_dominated(const std::set<Obligations>& frontier) {
  std::vector<Obligations> by_size(frontier.begin(), frontier.end());
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Obligations& x, const Obligations& y) { return x.size() < y.size(); });
  std::vector<Obligations> kept;
  for (const auto& s : by_size) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Obligations& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(s);
  }
  return {kept.begin(), kept.end()};
}

}  // namespace

bool afw_accepts(const Afw& a, const Trace& t) {
  std::set<Obligations> frontier{{a.initial}};
  for (std::size_t i = 0; i < t.length(); ++i) {
    std::vector<int> letter = letter_ids(a.symbols, t[i]);
    std::set<Obligations> next;
    for (const auto& o : frontier) expand(a, o, letter, t.is_last(i), next);
    frontier = prune_dominated(next);
    if (frontier.empty()) return false;
    // With no obligation left the remaining letters cannot fail.
    if (frontier.contains(Obligations{})) return true;
  }
  return false;
}

std::vector<int> reachable_states(const Afw& a) {
  std::vector<int> order;
  if (a.states.empty()) return order;
  std::vector<bool> seen(a.states.size(), false);
  std::deque<int> queue{a.initial};
  seen[static_cast<std::size_t>(a.initial)] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (const auto& t : a.states[static_cast<std::size_t>(q)].transitions)
      for (int s : t.successors)
        if (!seen[static_cast<std::size_t>(s)]) {
          seen[static_cast<std::size_t>(s)] = true;
          queue.push_back(s);
        }
  }
  return order;
}

Stats afw_stats(const Afw& a) {
  Stats s;
  s.alphabet = a.symbols.size();
  for (int q : reachable_states(a)) {
    ++s.states;
    for (const auto& t : a.states[static_cast<std::size_t>(q)].transitions) {
      ++s.transitions;
      s.max_successors = std::max(s.max_successors, t.successors.size());
    }
  }
  return s;
}

}  // namespace dynaut
