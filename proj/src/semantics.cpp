#include "dynaut/semantics.hpp"

#include <stdexcept>

namespace dynaut {

Trace::Trace(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("trace must contain at least one letter");
  for (const auto& letter : letters_) {
    for (const auto& atom : letter) {
      if (!is_valid_atom_name(atom)) throw std::invalid_argument("invalid atom name '" + atom + "' in trace");
    }
  }
}

namespace {

// Positions run over 0..n where n = length; position n lies past the end.
// Nothing holds there: a step never starts at n and modalities never land on it.
using Relation = std::vector<std::vector<bool>>;

bool holds(const Formula& f, const Trace& t, std::size_t i);

bool holds_prop(const Formula& f, const Letter& letter) {
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom:
      return letter.contains(f.name());
    case Kind::Not:
      return !holds_prop(f.operand(), letter);
    case Kind::And:
      return holds_prop(f.lhs(), letter) && holds_prop(f.rhs(), letter);
    case Kind::Or:
      return holds_prop(f.lhs(), letter) || holds_prop(f.rhs(), letter);
    default:
      throw std::logic_error("non-propositional step payload");
  }
}

Relation compose(const Relation& a, const Relation& b) {
  std::size_t m = a.size();
  Relation out(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < m; ++j)
          if (b[k][j]) out[i][j] = true;
  return out;
}

Relation relation(const Path& p, const Trace& t) {
  std::size_t n = t.length();
  Relation r(n + 1, std::vector<bool>(n + 1, false));
  switch (p.kind()) {
    case PathKind::Prop:
      for (std::size_t i = 0; i < n; ++i)
        if (holds_prop(p.formula(), t[i])) r[i][i + 1] = true;
      break;
    case PathKind::Test:
      for (std::size_t i = 0; i <= n; ++i)
        if (holds(p.formula(), t, i)) r[i][i] = true;
      break;
    case PathKind::Seq:
      r = compose(relation(p.first(), t), relation(p.second(), t));
      break;
    case PathKind::Alt: {
      Relation a = relation(p.first(), t);
      Relation b = relation(p.second(), t);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) r[i][j] = a[i][j] || b[i][j];
      break;
    }
    case PathKind::Star: {
      Relation step = relation(p.body(), t);
      for (std::size_t i = 0; i <= n; ++i) r[i][i] = true;
      // Iterate r := r ∪ r∘step until stable.
      for (;;) {
        Relation next = compose(r, step);
        bool changed = false;
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; j <= n; ++j)
            if (next[i][j] && !r[i][j]) {
              r[i][j] = true;
              changed = true;
            }
        if (!changed) break;
      }
      break;
    }
  }
  return r;
}

bool holds(const Formula& f, const Trace& t, std::size_t i) {
  std::size_t n = t.length();
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
    case Kind::Diamond: {
      Relation r = relation(f.path(), t);
      for (std::size_t j = i; j < n; ++j)
        if (r[i][j] && holds(f.operand(), t, j)) return true;
      return false;
    }
    case Kind::Box: {
      Relation r = relation(f.path(), t);
      for (std::size_t j = i; j < n; ++j)
        if (r[i][j] && !holds(f.operand(), t, j)) return false;
      return true;
    }
    default:
      throw std::invalid_argument("eval: formula contains LTLf sugar; desugar it first");
  }
}

}  // namespace

std::set<PositionPair> path_relation(const Path& p, const Trace& t) {
  Relation r = relation(p, t);
  std::set<PositionPair> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[i][j]) out.emplace(i, j);
  return out;
}

bool eval(const Formula& f, const Trace& t, std::size_t i) {
  if (i >= t.length()) throw std::invalid_argument("eval: position out of range");
  if (!is_core(f)) throw std::invalid_argument("eval: formula contains LTLf sugar; desugar it first");
  return holds(f, t, i);
}

bool accepts_semantics(const Formula& f, const Trace& t) { return holds(nnf(desugar(f)), t, 0); }

void for_each_trace(const std::vector<std::string>& atoms, std::size_t max_len,
                    const std::function<void(const Trace&)>& fn) {
  const std::size_t letters = std::size_t{1} << atoms.size();
  std::vector<Letter> alphabet(letters);
  for (std::size_t mask = 0; mask < letters; ++mask)
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (mask & (std::size_t{1} << a)) alphabet[mask].insert(atoms[a]);

  // Odometer increment, last position least significant; false on wrap-around.
  auto increment = [letters](std::vector<std::size_t>& digits) {
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < letters) return true;
      digits[k] = 0;
    }
    return false;
  };

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    do {
      std::vector<Letter> word;
      word.reserve(len);
      for (std::size_t d : digits) word.push_back(alphabet[d]);
      fn(Trace(std::move(word)));
    } while (increment(digits));
  }
}

std::vector<Trace> enumerate_traces(const std::vector<std::string>& atoms, std::size_t max_len) {
  std::vector<Trace> out;
  for_each_trace(atoms, max_len, [&](const Trace& t) { out.push_back(t); });
  return out;
}

}  // namespace dynaut
