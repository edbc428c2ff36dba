#pragma once

// Second reference evaluator for the tests. Unlike dynaut::eval it reads the
// LTLf operators directly and computes path targets by forward search from a
// single position, so agreement between the two is meaningful.

#include <set>
#include <vector>

#include "dynaut/formula.hpp"
#include "dynaut/semantics.hpp"

namespace oracle {

using dynaut::Formula;
using dynaut::Kind;
using dynaut::Path;
using dynaut::PathKind;
using dynaut::Trace;

bool holds(const Formula& f, const Trace& t, std::size_t i);

// Positions reachable from i by p, including the position just past the end.
inline std::set<std::size_t> targets(const Path& p, const Trace& t, std::size_t i) {
  const std::size_t n = t.length();
  switch (p.kind()) {
    case PathKind::Prop:
      if (i < n && holds(p.formula(), t, i)) return {i + 1};
      return {};
    case PathKind::Test:
      if (holds(p.formula(), t, i)) return {i};
      return {};
    case PathKind::Seq: {
      std::set<std::size_t> out;
      for (std::size_t k : targets(p.first(), t, i)) {
        auto more = targets(p.second(), t, k);
        out.insert(more.begin(), more.end());
      }
      return out;
    }
    case PathKind::Alt: {
      auto out = targets(p.first(), t, i);
      auto more = targets(p.second(), t, i);
      out.insert(more.begin(), more.end());
      return out;
    }
    case PathKind::Star: {
      std::set<std::size_t> seen{i};
      std::vector<std::size_t> work{i};
      while (!work.empty()) {
        std::size_t k = work.back();
        work.pop_back();
        for (std::size_t j : targets(p.body(), t, k))
          if (seen.insert(j).second) work.push_back(j);
      }
      return seen;
    }
  }
  return {};
}

inline bool holds(const Formula& f, const Trace& t, std::size_t i) {
  const std::size_t n = t.length();
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom:
      return i < n && t[i].contains(f.name());
    case Kind::Not:
      return !holds(f.operand(), t, i);
    case Kind::And:
      return holds(f.lhs(), t, i) && holds(f.rhs(), t, i);
    case Kind::Or:
      return holds(f.lhs(), t, i) || holds(f.rhs(), t, i);
    case Kind::Diamond:
      for (std::size_t j : targets(f.path(), t, i))
        if (j < n && holds(f.operand(), t, j)) return true;
      return false;
    case Kind::Box:
      for (std::size_t j : targets(f.path(), t, i))
        if (j < n && !holds(f.operand(), t, j)) return false;
      return true;
    case Kind::Next:
      return i + 1 < n && holds(f.operand(), t, i + 1);
    case Kind::WeakNext:
      return i + 1 >= n || holds(f.operand(), t, i + 1);
    case Kind::Eventually:
      for (std::size_t j = i; j < n; ++j)
        if (holds(f.operand(), t, j)) return true;
      return false;
    case Kind::Always:
      for (std::size_t j = i; j < n; ++j)
        if (!holds(f.operand(), t, j)) return false;
      return true;
    case Kind::Until:
      for (std::size_t k = i; k < n; ++k) {
        if (holds(f.rhs(), t, k)) return true;
        if (!holds(f.lhs(), t, k)) return false;
      }
      return false;
    case Kind::Release:
      for (std::size_t k = i; k < n; ++k) {
        if (!holds(f.rhs(), t, k)) return false;
        if (holds(f.lhs(), t, k)) return true;
      }
      return true;
    case Kind::Last:
      return i + 1 >= n;
  }
  return false;
}

inline bool accepts(const Formula& f, const Trace& t) { return holds(f, t, 0); }

}  // namespace oracle
