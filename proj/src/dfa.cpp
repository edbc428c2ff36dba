#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "dynaut/fsa.hpp"

namespace dynaut {

Dfa::Dfa(SymbolTable symbols, std::vector<Cube> minterms, int initial, std::vector<int> table,
         std::vector<bool> accepting, std::vector<std::string> labels)
    : symbols_(std::move(symbols)),
      minterms_(std::move(minterms)),
      initial_(initial),
      table_(std::move(table)),
      accepting_(std::move(accepting)),
      labels_(std::move(labels)) {
  if (table_.size() != accepting_.size() * letter_count()) throw std::invalid_argument("dfa: table size mismatch");
  if (labels_.size() != accepting_.size()) throw std::invalid_argument("dfa: label count mismatch");
}

std::size_t Dfa::minterm_of(const std::vector<int>& letter) const {
  for (std::size_t m = 0; m < minterms_.size(); ++m)
    if (satisfies(letter, minterms_[m])) return m;
  throw std::logic_error("dfa: minterms do not cover the letter");
}

std::vector<bool> Dfa::live_states() const {
  std::size_t n = state_count();
  std::vector<bool> live(n, false);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t m = 0; m < minterms_.size(); ++m)
      if (accepting(next(static_cast<int>(s), m, true))) live[s] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (live[s]) continue;
      for (std::size_t m = 0; m < minterms_.size(); ++m)
        if (live[static_cast<std::size_t>(next(static_cast<int>(s), m, false))]) {
          live[s] = true;
          changed = true;
          break;
        }
    }
  }
  return live;
}

std::vector<bool> Dfa::dead_states() const {
  auto live = live_states();
  std::vector<bool> dead(state_count());
  for (std::size_t s = 0; s < state_count(); ++s) dead[s] = !live[s] && !accepting_[s];
  return dead;
}

// ---------------------------------------------------------------------------
// Minterms

namespace {

void split(const Cube& cube, const std::vector<Cube>& conds, std::vector<Cube>& out) {
  for (const auto& c : conds) {
    if (implies(cube, c) || disjoint(cube, c)) continue;
    // Some atom of c is still free in cube.
    int atom = 0;
    for (int p : c.pos)
      if (!std::binary_search(cube.pos.begin(), cube.pos.end(), p)) {
        atom = p;
        break;
      }
    if (atom == 0) {
      for (int q : c.neg)
        if (!std::binary_search(cube.neg.begin(), cube.neg.end(), q)) {
          atom = q;
          break;
        }
    }
    split(*intersect(cube, Cube{{}, {atom}}), conds, out);
    split(*intersect(cube, Cube{{atom}, {}}), conds, out);
    return;
  }
  out.push_back(cube);
}

}  // namespace

std::vector<Cube> minterms_for(const std::vector<Cube>& conds) {
  std::vector<Cube> distinct;
  for (const auto& c : conds)
    if (!c.is_true() && std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
  std::vector<Cube> out;
  split(Cube{}, distinct, out);
  return out;
}

// ---------------------------------------------------------------------------
// Subset construction

Dfa nfa_to_dfa(const Nfa& n) {
  std::vector<Cube> conds;
  for (const auto& s : n.states)
    for (const auto& t : s.transitions) conds.push_back(t.cond);
  std::vector<Cube> minterms = minterms_for(conds);
  const std::size_t letters = 2 * minterms.size();

  // Keys are sorted NFA state sets; {-1} is the accept-and-stop sink and the
  // empty set is the rejecting sink.
  const std::vector<int> final_key{-1};
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> keys;
  std::deque<int> queue;
  auto intern = [&](const std::vector<int>& key) {
    auto [it, fresh] = index.emplace(key, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(key);
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::vector<int> table;
  int initial = intern({n.initial});
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    const std::vector<int> key = keys[static_cast<std::size_t>(id)];
    table.resize(keys.size() * letters, -1);
    for (std::size_t m = 0; m < minterms.size(); ++m) {
      for (bool last : {false, true}) {
        std::set<int> target;
        if (key != final_key) {
          for (int s : key)
            for (const auto& t : n.states[static_cast<std::size_t>(s)].transitions)
              if (last_matches(t.last, last) && implies(minterms[m], t.cond)) target.insert(t.target);
        }
        int to;
        if (key == final_key) {
          to = intern({});
        } else if (last) {
          to = n.discharged >= 0 && target.contains(n.discharged) ? intern(final_key) : intern({});
        } else {
          to = intern(std::vector<int>(target.begin(), target.end()));
        }
        table.resize(keys.size() * letters, -1);
        table[static_cast<std::size_t>(id) * letters + Dfa::letter(m, last)] = to;
      }
    }
  }
  table.resize(keys.size() * letters, -1);

  std::vector<bool> accepting(keys.size(), false);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == final_key) {
      accepting[i] = true;
      labels.push_back("final");
      continue;
    }
    std::string label = "{";
    for (std::size_t k = 0; k < keys[i].size(); ++k) {
      if (k) label += ",";
      label += std::to_string(keys[i][k]);
    }
    labels.push_back(label + "}");
  }
  return Dfa(n.symbols, std::move(minterms), initial, std::move(table), std::move(accepting), std::move(labels));
}

// ---------------------------------------------------------------------------
// Minimization

Dfa minimize(const Dfa& d) {
  const std::size_t letters = d.letter_count();

  // Reachable part, BFS order.
  std::vector<int> order;
  std::vector<int> local(d.state_count(), -1);
  {
    std::deque<int> queue{d.initial()};
    local[static_cast<std::size_t>(d.initial())] = 0;
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      order.push_back(s);
      for (std::size_t a = 0; a < letters; ++a) {
        int t = d.next(s, a / 2, a % 2 == 1);
        if (local[static_cast<std::size_t>(t)] < 0) {
          local[static_cast<std::size_t>(t)] = static_cast<int>(order.size() + queue.size());
          queue.push_back(t);
        }
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<int> delta(n * letters);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < letters; ++a)
      delta[s * letters + a] = local[static_cast<std::size_t>(d.next(order[s], a / 2, a % 2 == 1))];

  std::vector<std::vector<int>> inverse(n * letters);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < letters; ++a)
      inverse[a * n + static_cast<std::size_t>(delta[s * letters + a])].push_back(static_cast<int>(s));

  // Initial partition: accepting / rejecting.
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n);
  {
    std::vector<int> acc, rej;
    for (std::size_t s = 0; s < n; ++s) (d.accepting(order[s]) ? acc : rej).push_back(static_cast<int>(s));
    for (auto* part : {&rej, &acc}) {
      if (part->empty()) continue;
      for (int s : *part) block_of[static_cast<std::size_t>(s)] = static_cast<int>(blocks.size());
      blocks.push_back(*part);
    }
  }

  std::deque<std::pair<int, std::size_t>> work;
  std::vector<std::vector<char>> in_work;
  auto push = [&](int block, std::size_t a) {
    if (in_work.size() <= static_cast<std::size_t>(block)) in_work.resize(blocks.size(), std::vector<char>(letters, 0));
    if (!in_work[static_cast<std::size_t>(block)][a]) {
      in_work[static_cast<std::size_t>(block)][a] = 1;
      work.emplace_back(block, a);
    }
  };
  in_work.assign(blocks.size(), std::vector<char>(letters, 0));
  if (blocks.size() == 2) {
    int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (std::size_t a = 0; a < letters; ++a) push(smaller, a);
  }

  std::vector<char> in_splitter(n, 0);
  std::vector<std::size_t> hits;
  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    in_work[static_cast<std::size_t>(splitter)][a] = 0;

    std::vector<int> preds;
    for (int t : blocks[static_cast<std::size_t>(splitter)])
      for (int s : inverse[a * n + static_cast<std::size_t>(t)])
        if (!in_splitter[static_cast<std::size_t>(s)]) {
          in_splitter[static_cast<std::size_t>(s)] = 1;
          preds.push_back(s);
        }

    hits.assign(blocks.size(), 0);
    std::vector<int> touched;
    for (int s : preds) {
      auto b = static_cast<std::size_t>(block_of[static_cast<std::size_t>(s)]);
      if (hits[b]++ == 0) touched.push_back(static_cast<int>(b));
    }

    for (int y : touched) {
      auto& members = blocks[static_cast<std::size_t>(y)];
      if (hits[static_cast<std::size_t>(y)] == members.size()) continue;
      std::vector<int> inside, outside;
      for (int s : members) (in_splitter[static_cast<std::size_t>(s)] ? inside : outside).push_back(s);
      int z = static_cast<int>(blocks.size());
      members = std::move(inside);
      for (int s : outside) block_of[static_cast<std::size_t>(s)] = z;
      blocks.push_back(std::move(outside));
      in_work.resize(blocks.size(), std::vector<char>(letters, 0));
      for (std::size_t c = 0; c < letters; ++c) {
        if (in_work[static_cast<std::size_t>(y)][c]) {
          push(z, c);
        } else {
          push(blocks[static_cast<std::size_t>(y)].size() <= blocks[static_cast<std::size_t>(z)].size() ? y : z, c);
        }
      }
    }
    for (int s : preds) in_splitter[static_cast<std::size_t>(s)] = 0;
  }

  // Quotient, renumbered breadth-first from the initial block.
  std::vector<int> renumber(blocks.size(), -1);
  std::vector<int> block_order;
  {
    std::deque<int> queue{block_of[0]};
    renumber[static_cast<std::size_t>(block_of[0])] = 0;
    while (!queue.empty()) {
      int b = queue.front();
      queue.pop_front();
      block_order.push_back(b);
      int rep = blocks[static_cast<std::size_t>(b)].front();
      for (std::size_t a = 0; a < letters; ++a) {
        int tb = block_of[static_cast<std::size_t>(delta[static_cast<std::size_t>(rep) * letters + a])];
        if (renumber[static_cast<std::size_t>(tb)] < 0) {
          renumber[static_cast<std::size_t>(tb)] = static_cast<int>(block_order.size() + queue.size());
          queue.push_back(tb);
        }
      }
    }
  }

  const std::size_t m = block_order.size();
  std::vector<int> table(m * letters);
  std::vector<bool> accepting(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    int rep = blocks[static_cast<std::size_t>(block_order[i])].front();
    accepting[i] = d.accepting(order[static_cast<std::size_t>(rep)]);
    labels[i] = "q" + std::to_string(i);
    for (std::size_t a = 0; a < letters; ++a)
      table[i * letters + a] =
          renumber[static_cast<std::size_t>(block_of[static_cast<std::size_t>(delta[static_cast<std::size_t>(rep) * letters + a])])];
  }
  return Dfa(d.symbols(), d.minterms(), 0, std::move(table), std::move(accepting), std::move(labels));
}

// ---------------------------------------------------------------------------
// Queries

bool dfa_accepts(const Dfa& d, const Trace& t) {
  int s = d.initial();
  for (std::size_t i = 0; i < t.length(); ++i)
    s = d.next(s, d.minterm_of(letter_ids(d.symbols(), t[i])), t.is_last(i));
  return d.accepting(s);
}

Stats dfa_stats(const Dfa& d) {
  Stats s;
  s.alphabet = d.symbols().size();
  s.states = d.state_count();
  auto dead = d.dead_states();
  for (std::size_t q = 0; q < d.state_count(); ++q)
    for (std::size_t a = 0; a < d.letter_count(); ++a)
      if (!dead[static_cast<std::size_t>(d.next(static_cast<int>(q), a / 2, a % 2 == 1))]) ++s.transitions;
  s.max_successors = s.transitions > 0 ? 1 : 0;
  return s;
}

Dfa compile_min_dfa(const Formula& f) { return minimize(nfa_to_dfa(afw_to_nfa(compile_afw(f)))); }

namespace {

Letter materialize(const SymbolTable& symbols, const Cube& cube) {
  Letter letter;
  for (int p : cube.pos) letter.insert(symbols.name(p));
  return letter;
}

}  // namespace

std::optional<Trace> shortest_witness(const Dfa& d) {
  // BFS over states reached by non-last letters; at each state try to finish
  // with a last-flagged letter.
  struct Parent {
    int state;
    std::size_t minterm;
  };
  std::vector<std::optional<Parent>> parent(d.state_count());
  std::vector<bool> seen(d.state_count(), false);
  std::deque<int> queue{d.initial()};
  seen[static_cast<std::size_t>(d.initial())] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (std::size_t m = 0; m < d.minterms().size(); ++m) {
      if (!d.accepting(d.next(s, m, true))) continue;
      std::vector<Letter> letters{materialize(d.symbols(), d.minterms()[m])};
      for (int at = s; parent[static_cast<std::size_t>(at)]; at = parent[static_cast<std::size_t>(at)]->state)
        letters.push_back(materialize(d.symbols(), d.minterms()[parent[static_cast<std::size_t>(at)]->minterm]));
      std::reverse(letters.begin(), letters.end());
      return Trace(std::move(letters));
    }
    for (std::size_t m = 0; m < d.minterms().size(); ++m) {
      int t = d.next(s, m, false);
      if (seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      parent[static_cast<std::size_t>(t)] = Parent{s, m};
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

bool is_empty(const Dfa& d) { return !d.live_states()[static_cast<std::size_t>(d.initial())]; }

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
  SymbolTable merged;
  for (const auto& name : a.symbols().names()) merged.add(name);
  for (const auto& name : b.symbols().names()) merged.add(name);

  auto translate = [&merged](const Dfa& d, const Cube& c) {
    Cube out;
    for (int p : c.pos) out.pos.push_back(*merged.find(d.symbols().name(p)));
    for (int q : c.neg) out.neg.push_back(*merged.find(d.symbols().name(q)));
    std::sort(out.pos.begin(), out.pos.end());
    std::sort(out.neg.begin(), out.neg.end());
    return out;
  };

  // Joint alphabet: consistent pairs of minterms.
  struct JointLetter {
    std::size_t ma, mb;
    Letter letter;
  };
  std::vector<JointLetter> joint;
  for (std::size_t i = 0; i < a.minterms().size(); ++i) {
    Cube ca = translate(a, a.minterms()[i]);
    for (std::size_t j = 0; j < b.minterms().size(); ++j) {
      auto both = intersect(ca, translate(b, b.minterms()[j]));
      if (both) joint.push_back({i, j, materialize(merged, *both)});
    }
  }

  using Pair = std::pair<int, int>;
  struct Parent {
    Pair from;
    std::size_t letter;
  };
  std::map<Pair, std::optional<Parent>> parent;
  std::deque<Pair> queue;
  Pair start{a.initial(), b.initial()};
  parent.emplace(start, std::nullopt);
  queue.push_back(start);
  while (!queue.empty()) {
    Pair p = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < joint.size(); ++k) {
      bool acc_a = a.accepting(a.next(p.first, joint[k].ma, true));
      bool acc_b = b.accepting(b.next(p.second, joint[k].mb, true));
      if (acc_a == acc_b) continue;
      std::vector<Letter> letters{joint[k].letter};
      for (Pair at = p; parent.at(at); at = parent.at(at)->from) letters.push_back(joint[parent.at(at)->letter].letter);
      std::reverse(letters.begin(), letters.end());
      return EquivalenceResult{false, Trace(std::move(letters))};
    }
    for (std::size_t k = 0; k < joint.size(); ++k) {
      Pair q{a.next(p.first, joint[k].ma, false), b.next(p.second, joint[k].mb, false)};
      if (parent.contains(q)) continue;
      parent.emplace(q, Parent{p, k});
      queue.push_back(q);
    }
  }
  return EquivalenceResult{true, std::nullopt};
}

std::optional<std::size_t> first_failure(const Dfa& d, const Trace& t) {
  const std::size_t n = t.length();
  // possible[k][s]: s accepts some well-formed word of exactly k letters.
  std::vector<std::vector<bool>> possible(n + 1, std::vector<bool>(d.state_count(), false));
  for (std::size_t s = 0; s < d.state_count(); ++s) possible[0][s] = d.accepting(static_cast<int>(s));
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t s = 0; s < d.state_count(); ++s)
      for (std::size_t m = 0; m < d.minterms().size() && !possible[k][s]; ++m)
        possible[k][s] = possible[k - 1][static_cast<std::size_t>(d.next(static_cast<int>(s), m, k == 1))];

  int s = d.initial();
  for (std::size_t i = 0; i < n; ++i) {
    s = d.next(s, d.minterm_of(letter_ids(d.symbols(), t[i])), t.is_last(i));
    if (!possible[n - 1 - i][static_cast<std::size_t>(s)]) return i;
  }
  return std::nullopt;
}

}  // namespace dynaut
