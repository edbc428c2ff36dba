#pragma once

// Definition-level LDLf satisfaction over finite traces.
//
// Deliberately naive: path relations are materialized as position pairs and
// stars are closed by fixpoint iteration. This is the reference every
// automaton construction is checked against.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dynaut/formula.hpp"

namespace dynaut {

using Letter = std::set<std::string>;

/// Finite nonempty sequence of letters. Position length()-1 carries the
/// implicit `last` flag.
class Trace {
 public:
  /// Throws std::invalid_argument on an empty sequence or a bad atom name.
  explicit Trace(std::vector<Letter> letters);
  Trace(std::initializer_list<Letter> letters) : Trace(std::vector<Letter>(letters)) {}

  std::size_t length() const { return letters_.size(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_last(std::size_t i) const { return i + 1 == letters_.size(); }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace&, const Trace&) = default;

 private:
  std::vector<Letter> letters_;
};

using PositionPair = std::pair<std::size_t, std::size_t>;

/// Pairs (i, j), 0 <= i <= j <= length, such that `p` moves from i to j.
std::set<PositionPair> path_relation(const Path& p, const Trace& t);

/// t, i |= f for a core formula. Throws std::invalid_argument on sugar or an
/// out-of-range position.
bool eval(const Formula& f, const Trace& t, std::size_t i);

/// eval(nnf(desugar(f)), t, 0).
bool accepts_semantics(const Formula& f, const Trace& t);

/// Calls `fn` on every trace over `atoms` with length 1..max_len: shorter
/// traces first, letters in binary counting order.
void for_each_trace(const std::vector<std::string>& atoms, std::size_t max_len,
                    const std::function<void(const Trace&)>& fn);

std::vector<Trace> enumerate_traces(const std::vector<std::string>& atoms, std::size_t max_len);

}  // namespace dynaut
