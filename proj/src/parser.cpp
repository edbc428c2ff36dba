#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynaut/error.hpp"
#include "dynaut/formula.hpp"

namespace dynaut {

namespace {

enum class Tok {
  Atom,
  True,
  False,
  Last,
  Next,
  WeakNext,
  Eventually,
  Always,
  Until,
  Release,
  Not,
  And,
  Or,
  LAngle,
  RAngle,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Question,
  Star,
  Semicolon,
  Plus,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::True: return "'tt'";
    case Tok::False: return "'ff'";
    case Tok::Last: return "'LAST'";
    case Tok::Next: return "'X'";
    case Tok::WeakNext: return "'wX'";
    case Tok::Eventually: return "'F'";
    case Tok::Always: return "'G'";
    case Tok::Until: return "'U'";
    case Tok::Release: return "'R'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Question: return "'?'";
    case Tok::Star: return "'*'";
    case Tok::Semicolon: return "';'";
    case Tok::Plus: return "'+'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), l, cl});
      advance(1);
    };
    switch (c) {
      case '~': single(Tok::Not); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      case '<': single(Tok::LAngle); continue;
      case '>': single(Tok::RAngle); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '?': single(Tok::Question); continue;
      case '*': single(Tok::Star); continue;
      case ';': single(Tok::Semicolon); continue;
      case '+': single(Tok::Plus); continue;
      default: break;
    }
    bool ident_start = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!ident_start) {
      throw ParseError(std::string("unknown operator '") + c + "'", l, cl);
    }
    std::size_t j = i;
    while (j < text.size()) {
      char d = text[j];
      bool ok = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_';
      if (!ok) break;
      ++j;
    }
    std::string word(text.substr(i, j - i));
    Tok kind = Tok::Atom;
    if (word == "tt" || word == "true") kind = Tok::True;
    else if (word == "ff" || word == "false") kind = Tok::False;
    else if (word == "LAST") kind = Tok::Last;
    else if (word == "X") kind = Tok::Next;
    else if (word == "wX") kind = Tok::WeakNext;
    else if (word == "F") kind = Tok::Eventually;
    else if (word == "G") kind = Tok::Always;
    else if (word == "U") kind = Tok::Until;
    else if (word == "R") kind = Tok::Release;
    else if (word[0] >= 'A' && word[0] <= 'Z') throw ParseError("unknown operator '" + word + "'", l, cl);
    else if (word == "last") throw ParseError("'last' is a reserved position flag; use LAST", l, cl);
    out.push_back({kind, word, l, cl});
    advance(j - i);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// A path operand is either a formula (a step or, with '?', a test) or a
// program already known to be a path.
struct PathOperand {
  std::optional<Formula> formula;
  std::optional<Path> path;
  Token where;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = parse_or();
    if (peek().kind != Tok::End) fail({Tok::And, Tok::Or, Tok::Until, Tok::Release, Tok::End});
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    std::string msg = "unexpected ";
    msg += t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
    msg += ", expected one of:";
    std::set<std::string> names;
    for (Tok e : expected) names.insert(describe(e));
    for (const auto& n : names) msg += " " + n;
    throw ParseError(msg, t.line, t.column);
  }

  void expect_close(Tok close, const Token& open) {
    if (at(close)) {
      take();
      return;
    }
    const Token& t = peek();
    std::string msg = std::string("unbalanced ") + (open.kind == Tok::LParen ? "parenthesis" : "modality bracket") +
                      ": expected " + describe(close) + " to close " + describe(open.kind) + " opened at " +
                      std::to_string(open.line) + ":" + std::to_string(open.column) + ", found " +
                      (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'");
    throw ParseError(msg, t.line, t.column);
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (at(Tok::Or)) {
      take();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_binary();
    while (at(Tok::And)) {
      take();
      f = Formula::conj(f, parse_binary());
    }
    return f;
  }

  Formula parse_binary() {
    Formula f = parse_unary();
    if (at(Tok::Until)) {
      take();
      return Formula::until(f, parse_binary());
    }
    if (at(Tok::Release)) {
      take();
      return Formula::release(f, parse_binary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        take();
        return Formula::negate(parse_unary());
      case Tok::Next:
        take();
        return Formula::next(parse_unary());
      case Tok::WeakNext:
        take();
        return Formula::weak_next(parse_unary());
      case Tok::Eventually:
        take();
        return Formula::eventually(parse_unary());
      case Tok::Always:
        take();
        return Formula::always(parse_unary());
      case Tok::LAngle: {
        Token open = take();
        Path p = parse_path();
        expect_close(Tok::RAngle, open);
        return Formula::diamond(p, parse_unary());
      }
      case Tok::LBracket: {
        Token open = take();
        Path p = parse_path();
        expect_close(Tok::RBracket, open);
        return Formula::box(p, parse_unary());
      }
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::True:
        take();
        return Formula::tt();
      case Tok::False:
        take();
        return Formula::ff();
      case Tok::Last:
        take();
        return Formula::last();
      case Tok::Atom:
        return Formula::atom(take().text);
      case Tok::LParen: {
        Token open = take();
        Formula f = parse_or();
        expect_close(Tok::RParen, open);
        return f;
      }
      default:
        fail({Tok::Atom, Tok::True, Tok::False, Tok::Last, Tok::LParen, Tok::Not, Tok::Next, Tok::WeakNext,
              Tok::Eventually, Tok::Always, Tok::LAngle, Tok::LBracket});
    }
  }

  // Paths: '+' binds loosest, then ';', then postfix '*' and '?'.
  Path parse_path() {
    Path p = parse_seq();
    while (at(Tok::Plus)) {
      take();
      p = Path::alt(p, parse_seq());
    }
    return p;
  }

  Path parse_seq() {
    Path p = to_path(parse_postfix());
    while (at(Tok::Semicolon)) {
      take();
      p = Path::seq(p, to_path(parse_postfix()));
    }
    return p;
  }

  PathOperand parse_postfix() {
    PathOperand op = parse_path_primary();
    while (at(Tok::Star) || at(Tok::Question)) {
      Token t = take();
      if (t.kind == Tok::Question) {
        if (!op.formula) throw ParseError("test operator '?' applies to formulas, not programs", t.line, t.column);
        op = PathOperand{std::nullopt, Path::test(*op.formula), op.where};
      } else {
        op = PathOperand{std::nullopt, Path::star(to_path(op)), op.where};
      }
    }
    return op;
  }

  PathOperand parse_path_primary() {
    Token where = peek();
    if (!at(Tok::LParen)) return PathOperand{parse_or(), std::nullopt, where};

    // '(' opens either a formula or a program; try the formula reading first.
    std::size_t start = pos_;
    std::optional<ParseError> formula_error;
    try {
      Formula f = parse_unary();
      return PathOperand{continue_formula(f), std::nullopt, where};
    } catch (const ParseError& e) {
      formula_error = e;
    }
    std::size_t formula_reach = pos_;
    pos_ = start;
    Token open = take();
    try {
      Path p = parse_path();
      expect_close(Tok::RParen, open);
      return PathOperand{std::nullopt, p, where};
    } catch (const ParseError& e) {
      if (pos_ >= formula_reach) throw;
      throw *formula_error;
    }
  }

  // Completes a formula whose first operand has already been parsed.
  Formula continue_formula(Formula first) {
    if (at(Tok::Until)) {
      take();
      first = Formula::until(first, parse_binary());
    } else if (at(Tok::Release)) {
      take();
      first = Formula::release(first, parse_binary());
    }
    while (at(Tok::And)) {
      take();
      first = Formula::conj(first, parse_binary());
    }
    while (at(Tok::Or)) {
      take();
      first = Formula::disj(first, parse_and());
    }
    return first;
  }

  static Path to_path(const PathOperand& op) {
    if (op.path) return *op.path;
    if (!is_propositional(*op.formula)) {
      throw ParseError("program step must be propositional; use '?' to test a temporal formula", op.where.line,
                       op.where.column);
    }
    return Path::prop(*op.formula);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser parser(tokenize(text));
  return parser.parse_all();
}

}  // namespace dynaut
