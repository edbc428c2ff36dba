#pragma once

// LDLf formulas with LTLf sugar.
//
// Formula and Path are immutable handles onto shared nodes. Copies are cheap
// and nodes are never mutated after construction, so values can be shared
// freely across threads.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dynaut {

enum class Kind : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Diamond,
  Box,
  // LTLf sugar
  Next,
  WeakNext,
  Eventually,
  Always,
  Until,
  Release,
  Last,
};

enum class PathKind : std::uint8_t { Prop, Test, Seq, Alt, Star };

struct FormulaNode;
struct PathNode;
struct NodeFactory;
class Path;

class Formula {
 public:
  static Formula tt();
  static Formula ff();
  static Formula atom(std::string name);
  static Formula negate(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula diamond(Path p, Formula f);
  static Formula box(Path p, Formula f);
  static Formula next(Formula f);
  static Formula weak_next(Formula f);
  static Formula eventually(Formula f);
  static Formula always(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula release(Formula l, Formula r);
  static Formula last();

  Kind kind() const;
  /// Atom name; empty for other kinds.
  const std::string& name() const;
  /// Single operand of unary kinds, or the body of a modality.
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Path of a Diamond/Box.
  const Path& path() const;

  std::size_t hash() const;

  bool is_literal() const;
  bool is_sugar() const { return kind() >= Kind::Next; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  friend struct NodeFactory;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

class Path {
 public:
  static Path prop(Formula payload);
  static Path test(Formula f);
  static Path seq(Path a, Path b);
  static Path alt(Path a, Path b);
  static Path star(Path p);
  /// The one-step program `true`.
  static Path step() { return prop(Formula::tt()); }

  PathKind kind() const;
  /// Payload of Prop and Test.
  const Formula& formula() const;
  const Path& first() const;
  const Path& second() const;
  /// Body of Star.
  const Path& body() const { return first(); }

  std::size_t hash() const;

  friend bool operator==(const Path& a, const Path& b);
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);

 private:
  friend struct NodeFactory;
  explicit Path(std::shared_ptr<const PathNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const PathNode> node_;
};

struct FormulaNode {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
  std::optional<Path> path;
  std::size_t hash;
};

struct PathNode {
  PathKind kind;
  std::optional<Formula> formula;
  std::vector<Path> children;
  std::size_t hash;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// True for atoms matching `[a-z][a-zA-Z0-9_]*` that are not reserved words.
bool is_valid_atom_name(std::string_view name);

/// True when `f` only uses tt/ff/atoms/~/&/|.
bool is_propositional(const Formula& f);
/// True when no sugar kind occurs anywhere, including inside paths.
bool is_core(const Formula& f);
/// True when `f` is core and negation is applied to atoms only.
bool is_nnf(const Formula& f);

/// Formula depth; literals (atoms, negated atoms, constants) count as 1.
int depth(const Formula& f);
int depth(const Path& p);

/// Parses the concrete grammar documented in docs/grammar.md.
/// Throws ParseError.
Formula parse_formula(std::string_view text);

/// Canonical fully parenthesized text; parse_formula(render(f)) == f.
std::string render(const Formula& f);
std::string render(const Path& p);

/// Rewrites LTLf sugar into LDLf modalities.
Formula desugar(const Formula& f);

/// Negation normal form of a core formula. Propositional path payloads are
/// left untouched; tests are normalized recursively.
Formula nnf(const Formula& f);

/// Fischer-Ladner closure of an NNF formula, in discovery order.
std::vector<Formula> closure(const Formula& f);

/// Number of structurally distinct formula and path nodes in `f`.
std::size_t count_subexpressions(const Formula& f);

/// Deterministic pseudo-random formula over `atoms`, including LTLf sugar and
/// LDLf modalities, with depth(result) <= max_depth.
Formula random_formula(std::uint64_t seed, int max_depth, const std::vector<std::string>& atoms);

/// Bijection between atom names and identifiers 1..size(). `last` is a
/// position flag and never gets an identifier.
class SymbolTable {
 public:
  SymbolTable() = default;

  /// Returns the identifier of `name`, assigning the next one if new.
  int add(const std::string& name);
  std::optional<int> find(const std::string& name) const;
  const std::string& name(int id) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> ids_;
};

/// Symbol table of `f` in order of first textual occurrence.
SymbolTable symbols_of(const Formula& f);

}  // namespace dynaut

template <>
struct std::hash<dynaut::Formula> {
  std::size_t operator()(const dynaut::Formula& f) const noexcept { return f.hash(); }
};
