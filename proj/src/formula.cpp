#include "dynaut/formula.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace dynaut {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

Formula make(Kind kind, std::string name, std::vector<Formula> children, std::optional<Path> path);

}  // namespace

// Node construction lives in a struct with friend access to the handles.
struct NodeFactory {
  static Formula formula(Kind kind, std::string name, std::vector<Formula> children,
                         std::optional<Path> path) {
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(kind));
    if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
    for (const auto& c : children) h = mix(h, c.hash());
    if (path) h = mix(h, path->hash());
    auto node = std::make_shared<const FormulaNode>(
        FormulaNode{kind, std::move(name), std::move(children), std::move(path), h});
    return Formula(std::move(node));
  }

  static Path path(PathKind kind, std::optional<Formula> formula, std::vector<Path> children) {
    std::size_t h = mix(0x9a7b3, static_cast<std::size_t>(kind));
    if (formula) h = mix(h, formula->hash());
    for (const auto& c : children) h = mix(h, c.hash());
    auto node =
        std::make_shared<const PathNode>(PathNode{kind, std::move(formula), std::move(children), h});
    return Path(std::move(node));
  }

  static const FormulaNode& node(const Formula& f) { return *f.node_; }
  static const PathNode& node(const Path& p) { return *p.node_; }
  static bool same(const Formula& a, const Formula& b) { return a.node_ == b.node_; }
  static bool same(const Path& a, const Path& b) { return a.node_ == b.node_; }
};

namespace {

Formula make(Kind kind, std::string name, std::vector<Formula> children, std::optional<Path> path) {
  return NodeFactory::formula(kind, std::move(name), std::move(children), std::move(path));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

Formula Formula::tt() {
  static const Formula value = make(Kind::True, {}, {}, std::nullopt);
  return value;
}

Formula Formula::ff() {
  static const Formula value = make(Kind::False, {}, {}, std::nullopt);
  return value;
}

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
  return make(Kind::Atom, std::move(name), {}, std::nullopt);
}

Formula Formula::negate(Formula f) { return make(Kind::Not, {}, {std::move(f)}, std::nullopt); }
Formula Formula::conj(Formula l, Formula r) {
  return make(Kind::And, {}, {std::move(l), std::move(r)}, std::nullopt);
}
Formula Formula::disj(Formula l, Formula r) {
  return make(Kind::Or, {}, {std::move(l), std::move(r)}, std::nullopt);
}
Formula Formula::diamond(Path p, Formula f) {
  return make(Kind::Diamond, {}, {std::move(f)}, std::move(p));
}
Formula Formula::box(Path p, Formula f) { return make(Kind::Box, {}, {std::move(f)}, std::move(p)); }
Formula Formula::next(Formula f) { return make(Kind::Next, {}, {std::move(f)}, std::nullopt); }
Formula Formula::weak_next(Formula f) {
  return make(Kind::WeakNext, {}, {std::move(f)}, std::nullopt);
}
Formula Formula::eventually(Formula f) {
  return make(Kind::Eventually, {}, {std::move(f)}, std::nullopt);
}
Formula Formula::always(Formula f) { return make(Kind::Always, {}, {std::move(f)}, std::nullopt); }
Formula Formula::until(Formula l, Formula r) {
  return make(Kind::Until, {}, {std::move(l), std::move(r)}, std::nullopt);
}
Formula Formula::release(Formula l, Formula r) {
  return make(Kind::Release, {}, {std::move(l), std::move(r)}, std::nullopt);
}
Formula Formula::last() {
  static const Formula value = make(Kind::Last, {}, {}, std::nullopt);
  return value;
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const Path& Formula::path() const { return node_->path.value(); }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::is_literal() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return operand().kind() == Kind::Atom;
    default:
      return false;
  }
}

Path Path::prop(Formula payload) {
  if (!is_propositional(payload)) throw std::invalid_argument("path step payload must be propositional");
  return NodeFactory::path(PathKind::Prop, std::move(payload), {});
}
Path Path::test(Formula f) { return NodeFactory::path(PathKind::Test, std::move(f), {}); }
Path Path::seq(Path a, Path b) { return NodeFactory::path(PathKind::Seq, std::nullopt, {std::move(a), std::move(b)}); }
Path Path::alt(Path a, Path b) { return NodeFactory::path(PathKind::Alt, std::nullopt, {std::move(a), std::move(b)}); }
Path Path::star(Path p) { return NodeFactory::path(PathKind::Star, std::nullopt, {std::move(p)}); }

PathKind Path::kind() const { return node_->kind; }
const Formula& Path::formula() const { return node_->formula.value(); }
const Path& Path::first() const { return node_->children.at(0); }
const Path& Path::second() const { return node_->children.at(1); }
std::size_t Path::hash() const { return node_->hash; }

// ---------------------------------------------------------------------------
// Structural comparison

bool operator==(const Formula& a, const Formula& b) {
  if (NodeFactory::same(a, b)) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (NodeFactory::same(a, b)) return std::strong_ordering::equal;
  const auto& x = NodeFactory::node(a);
  const auto& y = NodeFactory::node(b);
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
  if (x.path && y.path) {
    if (auto c = *x.path <=> *y.path; c != 0) return c;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Path& a, const Path& b) {
  if (NodeFactory::same(a, b)) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (NodeFactory::same(a, b)) return std::strong_ordering::equal;
  const auto& x = NodeFactory::node(a);
  const auto& y = NodeFactory::node(b);
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (x.formula && y.formula) {
    if (auto c = *x.formula <=> *y.formula; c != 0) return c;
  }
  if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Predicates

bool is_valid_atom_name(std::string_view name) {
  static const std::set<std::string, std::less<>> reserved = {"tt", "ff", "true", "false", "last", "wX"};
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return !reserved.contains(name);
}

bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return is_propositional(f.operand());
    case Kind::And:
    case Kind::Or:
      return is_propositional(f.lhs()) && is_propositional(f.rhs());
    default:
      return false;
  }
}

namespace {

bool path_is_core(const Path& p) {
  switch (p.kind()) {
    case PathKind::Prop:
      return true;
    case PathKind::Test:
      return is_core(p.formula());
    case PathKind::Seq:
    case PathKind::Alt:
      return path_is_core(p.first()) && path_is_core(p.second());
    case PathKind::Star:
      return path_is_core(p.body());
  }
  return false;
}

bool path_is_nnf(const Path& p) {
  switch (p.kind()) {
    case PathKind::Prop:
      return true;
    case PathKind::Test:
      return is_nnf(p.formula());
    case PathKind::Seq:
    case PathKind::Alt:
      return path_is_nnf(p.first()) && path_is_nnf(p.second());
    case PathKind::Star:
      return path_is_nnf(p.body());
  }
  return false;
}

}  // namespace

bool is_core(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return is_core(f.operand());
    case Kind::And:
    case Kind::Or:
      return is_core(f.lhs()) && is_core(f.rhs());
    case Kind::Diamond:
    case Kind::Box:
      return path_is_core(f.path()) && is_core(f.operand());
    default:
      return false;
  }
}

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return f.operand().kind() == Kind::Atom;
    case Kind::And:
    case Kind::Or:
      return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case Kind::Diamond:
    case Kind::Box:
      return path_is_nnf(f.path()) && is_nnf(f.operand());
    default:
      return false;
  }
}

int depth(const Formula& f) {
  if (f.is_literal()) return 1;
  switch (f.kind()) {
    case Kind::Last:
      return 1;
    case Kind::Not:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Eventually:
    case Kind::Always:
      return 1 + depth(f.operand());
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
    case Kind::Release:
      return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
    case Kind::Diamond:
    case Kind::Box:
      return 1 + std::max(depth(f.path()), depth(f.operand()));
    default:
      return 1;
  }
}

int depth(const Path& p) {
  switch (p.kind()) {
    case PathKind::Prop:
      return depth(p.formula());
    case PathKind::Test:
      return 1 + depth(p.formula());
    case PathKind::Seq:
    case PathKind::Alt:
      return 1 + std::max(depth(p.first()), depth(p.second()));
    case PathKind::Star:
      return 1 + depth(p.body());
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_prop(const Formula& f, std::string& out);
void render_formula(const Formula& f, std::string& out);

void render_path(const Path& p, std::string& out) {
  switch (p.kind()) {
    case PathKind::Prop:
      render_prop(p.formula(), out);
      break;
    case PathKind::Test:
      render_formula(p.formula(), out);
      out += '?';
      break;
    case PathKind::Seq:
      out += '(';
      render_path(p.first(), out);
      out += " ; ";
      render_path(p.second(), out);
      out += ')';
      break;
    case PathKind::Alt:
      out += '(';
      render_path(p.first(), out);
      out += " + ";
      render_path(p.second(), out);
      out += ')';
      break;
    case PathKind::Star:
      render_path(p.body(), out);
      out += '*';
      break;
  }
}

void render_binary(const Formula& f, const char* op, void (*rec)(const Formula&, std::string&),
                   std::string& out) {
  out += '(';
  rec(f.lhs(), out);
  out += op;
  rec(f.rhs(), out);
  out += ')';
}

// Inside a path step, constants print as true/false.
void render_prop(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Atom:
      out += f.name();
      break;
    case Kind::Not:
      out += '~';
      render_prop(f.operand(), out);
      break;
    case Kind::And:
      render_binary(f, " & ", render_prop, out);
      break;
    case Kind::Or:
      render_binary(f, " | ", render_prop, out);
      break;
    default:
      throw std::logic_error("non-propositional path payload");
  }
}

void render_unary(const char* op, const Formula& f, std::string& out) {
  out += '(';
  out += op;
  out += ' ';
  render_formula(f.operand(), out);
  out += ')';
}

void render_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::True:
      out += "tt";
      break;
    case Kind::False:
      out += "ff";
      break;
    case Kind::Atom:
      out += f.name();
      break;
    case Kind::Not:
      out += '~';
      render_formula(f.operand(), out);
      break;
    case Kind::And:
      render_binary(f, " & ", render_formula, out);
      break;
    case Kind::Or:
      render_binary(f, " | ", render_formula, out);
      break;
    case Kind::Diamond:
      out += "(< ";
      render_path(f.path(), out);
      out += " > ";
      render_formula(f.operand(), out);
      out += ')';
      break;
    case Kind::Box:
      out += "([ ";
      render_path(f.path(), out);
      out += " ] ";
      render_formula(f.operand(), out);
      out += ')';
      break;
    case Kind::Next:
      render_unary("X", f, out);
      break;
    case Kind::WeakNext:
      render_unary("wX", f, out);
      break;
    case Kind::Eventually:
      render_unary("F", f, out);
      break;
    case Kind::Always:
      render_unary("G", f, out);
      break;
    case Kind::Until:
      render_binary(f, " U ", render_formula, out);
      break;
    case Kind::Release:
      render_binary(f, " R ", render_formula, out);
      break;
    case Kind::Last:
      out += "LAST";
      break;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_formula(f, out);
  return out;
}

std::string render(const Path& p) {
  std::string out;
  render_path(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Desugaring and NNF

namespace {

Path desugar_path(const Path& p) {
  switch (p.kind()) {
    case PathKind::Prop:
      return p;
    case PathKind::Test:
      return Path::test(desugar(p.formula()));
    case PathKind::Seq:
      return Path::seq(desugar_path(p.first()), desugar_path(p.second()));
    case PathKind::Alt:
      return Path::alt(desugar_path(p.first()), desugar_path(p.second()));
    case PathKind::Star:
      return Path::star(desugar_path(p.body()));
  }
  return p;
}

}  // namespace

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Not:
      return Formula::negate(desugar(f.operand()));
    case Kind::And:
      return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Or:
      return Formula::disj(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Diamond:
      return Formula::diamond(desugar_path(f.path()), desugar(f.operand()));
    case Kind::Box:
      return Formula::box(desugar_path(f.path()), desugar(f.operand()));
    case Kind::Next:
      return Formula::diamond(Path::step(), desugar(f.operand()));
    case Kind::WeakNext:
      return Formula::box(Path::step(), desugar(f.operand()));
    case Kind::Eventually:
      return Formula::diamond(Path::star(Path::step()), desugar(f.operand()));
    case Kind::Always:
      return Formula::box(Path::star(Path::step()), desugar(f.operand()));
    case Kind::Until:
      return Formula::diamond(Path::star(Path::seq(Path::test(desugar(f.lhs())), Path::step())),
                              desugar(f.rhs()));
    case Kind::Release:
      return Formula::box(
          Path::star(Path::seq(Path::test(Formula::negate(desugar(f.lhs()))), Path::step())),
          desugar(f.rhs()));
    case Kind::Last:
      return Formula::box(Path::step(), Formula::ff());
  }
  return f;
}

namespace {

Formula nnf_signed(const Formula& f, bool negated);

Path nnf_path(const Path& p) {
  switch (p.kind()) {
    case PathKind::Prop:
      return p;
    case PathKind::Test:
      return Path::test(nnf_signed(p.formula(), false));
    case PathKind::Seq:
      return Path::seq(nnf_path(p.first()), nnf_path(p.second()));
    case PathKind::Alt:
      return Path::alt(nnf_path(p.first()), nnf_path(p.second()));
    case PathKind::Star:
      return Path::star(nnf_path(p.body()));
  }
  return p;
}

Formula nnf_signed(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Kind::True:
      return negated ? Formula::ff() : f;
    case Kind::False:
      return negated ? Formula::tt() : f;
    case Kind::Atom:
      return negated ? Formula::negate(f) : f;
    case Kind::Not:
      return nnf_signed(f.operand(), !negated);
    case Kind::And: {
      auto l = nnf_signed(f.lhs(), negated);
      auto r = nnf_signed(f.rhs(), negated);
      return negated ? Formula::disj(l, r) : Formula::conj(l, r);
    }
    case Kind::Or: {
      auto l = nnf_signed(f.lhs(), negated);
      auto r = nnf_signed(f.rhs(), negated);
      return negated ? Formula::conj(l, r) : Formula::disj(l, r);
    }
    case Kind::Diamond: {
      auto body = nnf_signed(f.operand(), negated);
      auto path = nnf_path(f.path());
      return negated ? Formula::box(path, body) : Formula::diamond(path, body);
    }
    case Kind::Box: {
      auto body = nnf_signed(f.operand(), negated);
      auto path = nnf_path(f.path());
      return negated ? Formula::diamond(path, body) : Formula::box(path, body);
    }
    default:
      throw std::invalid_argument("nnf requires a core formula; desugar first");
  }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_signed(f, false); }

// ---------------------------------------------------------------------------
// Closure

std::vector<Formula> closure(const Formula& f) {
  std::vector<Formula> order;
  std::unordered_set<Formula> seen;
  std::vector<Formula> stack{f};

  auto push = [&](Formula g) { stack.push_back(std::move(g)); };

  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    order.push_back(g);

    switch (g.kind()) {
      case Kind::And:
      case Kind::Or:
        push(g.rhs());
        push(g.lhs());
        break;
      case Kind::Diamond:
      case Kind::Box: {
        bool dia = g.kind() == Kind::Diamond;
        const Path& p = g.path();
        const Formula& body = g.operand();
        auto wrap = [dia](Path q, Formula h) {
          return dia ? Formula::diamond(std::move(q), std::move(h)) : Formula::box(std::move(q), std::move(h));
        };
        switch (p.kind()) {
          case PathKind::Prop:
            push(body);
            break;
          case PathKind::Test:
            push(body);
            push(dia ? p.formula() : nnf(Formula::negate(p.formula())));
            break;
          case PathKind::Seq:
            push(wrap(p.second(), body));
            push(wrap(p.first(), wrap(p.second(), body)));
            break;
          case PathKind::Alt:
            push(wrap(p.second(), body));
            push(wrap(p.first(), body));
            break;
          case PathKind::Star:
            push(wrap(p.body(), g));
            push(body);
            break;
        }
        break;
      }
      default:
        break;
    }
  }
  return order;
}

namespace {

void collect(const Formula& f, std::set<Formula>& formulas,
             std::set<Path>& paths);

void collect(const Path& p, std::set<Formula>& formulas,
             std::set<Path>& paths) {
  if (!paths.insert(p).second) return;
  switch (p.kind()) {
    case PathKind::Prop:
    case PathKind::Test:
      collect(p.formula(), formulas, paths);
      break;
    case PathKind::Seq:
    case PathKind::Alt:
      collect(p.first(), formulas, paths);
      collect(p.second(), formulas, paths);
      break;
    case PathKind::Star:
      collect(p.body(), formulas, paths);
      break;
  }
}

void collect(const Formula& f, std::set<Formula>& formulas,
             std::set<Path>& paths) {
  if (!formulas.insert(f).second) return;
  switch (f.kind()) {
    case Kind::Not:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Eventually:
    case Kind::Always:
      collect(f.operand(), formulas, paths);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
    case Kind::Release:
      collect(f.lhs(), formulas, paths);
      collect(f.rhs(), formulas, paths);
      break;
    case Kind::Diamond:
    case Kind::Box:
      collect(f.path(), formulas, paths);
      collect(f.operand(), formulas, paths);
      break;
    default:
      break;
  }
}

}  // namespace

std::size_t count_subexpressions(const Formula& f) {
  std::set<Formula> formulas;
  std::set<Path> paths;
  collect(f, formulas, paths);
  return formulas.size() + paths.size();
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

class FormulaGenerator {
 public:
  FormulaGenerator(std::uint64_t seed, const std::vector<std::string>& atoms) : rng_(seed), atoms_(atoms) {}

  Formula formula(int depth) {
    if (depth <= 1) return literal();
    switch (pick(13)) {
      case 0:
        return literal();
      case 1:
        return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 2:
        return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 3:
        return Formula::negate(formula(depth - 1));
      case 4:
        return Formula::next(formula(depth - 1));
      case 5:
        return Formula::weak_next(formula(depth - 1));
      case 6:
        return Formula::eventually(formula(depth - 1));
      case 7:
        return Formula::always(formula(depth - 1));
      case 8:
        return Formula::until(formula(depth - 1), formula(depth - 1));
      case 9:
        return Formula::release(formula(depth - 1), formula(depth - 1));
      case 10:
        return pick(4) == 0 ? Formula::last() : Formula::diamond(path(depth - 1), formula(depth - 1));
      case 11:
        return Formula::diamond(path(depth - 1), formula(depth - 1));
      default:
        return Formula::box(path(depth - 1), formula(depth - 1));
    }
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula atom() { return Formula::atom(atoms_[pick(atoms_.size())]); }

  Formula literal() {
    switch (pick(4)) {
      case 0:
        return Formula::tt();
      case 1:
        return Formula::ff();
      case 2:
        return atom();
      default:
        return Formula::negate(atom());
    }
  }

  Formula step_payload(int depth) {
    if (depth <= 1 || pick(2) == 0) {
      return pick(3) == 0 ? Formula::tt() : literal();
    }
    auto l = step_payload(depth - 1);
    auto r = step_payload(depth - 1);
    return pick(2) == 0 ? Formula::conj(l, r) : Formula::disj(l, r);
  }

  Path path(int depth) {
    if (depth <= 1) return Path::prop(step_payload(1));
    switch (pick(5)) {
      case 0:
        return Path::prop(step_payload(depth));
      case 1:
        return Path::test(formula(depth - 1));
      case 2:
        return Path::seq(path(depth - 1), path(depth - 1));
      case 3:
        return Path::alt(path(depth - 1), path(depth - 1));
      default:
        return Path::star(path(depth - 1));
    }
  }

  std::mt19937_64 rng_;
  const std::vector<std::string>& atoms_;
};

}  // namespace

Formula random_formula(std::uint64_t seed, int max_depth, const std::vector<std::string>& atoms) {
  if (max_depth < 1) throw std::invalid_argument("random_formula: max_depth must be >= 1");
  if (atoms.empty()) throw std::invalid_argument("random_formula: atom list is empty");
  FormulaGenerator gen(seed, atoms);
  return gen.formula(max_depth);
}

// ---------------------------------------------------------------------------
// Symbols

int SymbolTable::add(const std::string& name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  if (name == "last") throw std::invalid_argument("'last' is a reserved position flag");
  names_.push_back(name);
  int id = static_cast<int>(names_.size());
  ids_.emplace(name, id);
  return id;
}

std::optional<int> SymbolTable::find(const std::string& name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& SymbolTable::name(int id) const { return names_.at(static_cast<std::size_t>(id - 1)); }

namespace {

void add_symbols(const Formula& f, SymbolTable& table);

void add_symbols(const Path& p, SymbolTable& table) {
  switch (p.kind()) {
    case PathKind::Prop:
    case PathKind::Test:
      add_symbols(p.formula(), table);
      break;
    case PathKind::Seq:
    case PathKind::Alt:
      add_symbols(p.first(), table);
      add_symbols(p.second(), table);
      break;
    case PathKind::Star:
      add_symbols(p.body(), table);
      break;
  }
}

void add_symbols(const Formula& f, SymbolTable& table) {
  switch (f.kind()) {
    case Kind::Atom:
      table.add(f.name());
      break;
    case Kind::Not:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Eventually:
    case Kind::Always:
      add_symbols(f.operand(), table);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
    case Kind::Release:
      add_symbols(f.lhs(), table);
      add_symbols(f.rhs(), table);
      break;
    case Kind::Diamond:
    case Kind::Box:
      add_symbols(f.path(), table);
      add_symbols(f.operand(), table);
      break;
    default:
      break;
  }
}

}  // namespace

SymbolTable symbols_of(const Formula& f) {
  SymbolTable table;
  add_symbols(f, table);
  return table;
}

}  // namespace dynaut
