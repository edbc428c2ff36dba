#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "dynaut/error.hpp"
#include "dynaut/export.hpp"

namespace dynaut {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_asp_facts(const AutomatonView& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.symbols.size(); ++i) out << "prop(" << i + 1 << "," << v.symbols.names()[i] << ").\n";
  for (std::size_t s = 0; s < v.state_labels.size(); ++s) out << "state(" << s << "," << quote(v.state_labels[s]) << ").\n";
  out << "initial_state(" << v.initial << ").\n";
  for (const auto& t : v.transitions) {
    const std::string head = "delta(" + std::to_string(t.source) + "," + std::to_string(t.id);
    out << head << ").\n";
    for (int p : t.pos) out << head << ",pos," << p << ").\n";
    if (t.last == LastCondition::Required) out << head << ",pos,last).\n";
    for (int n : t.neg) out << head << ",neg," << n << ").\n";
    if (t.last == LastCondition::Forbidden) out << head << ",neg,last).\n";
    for (int s : t.successors) out << head << ",succ," << s << ").\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Fact reader

namespace {

struct Term {
  enum class Type { Number, Constant, String } type;
  std::string text;
  long long number = 0;
};

struct Fact {
  std::string predicate;
  std::vector<Term> args;
  int line = 0;
};

class FactReader {
 public:
  explicit FactReader(std::string_view text) : text_(text) {}

  std::vector<Fact> read_all() {
    std::vector<Fact> facts;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      facts.push_back(read_fact());
    }
    return facts;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("facts:" + std::to_string(line_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        if (text_[pos_] == '\n') fail("newline in string");
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      return Term{Term::Type::String, s};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string digits(text_.substr(start, pos_ - start));
      long long value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail("bad number '" + digits + "'");
      return Term{Term::Type::Number, digits, value};
    }
    if (std::islower(static_cast<unsigned char>(c))) return Term{Term::Type::Constant, identifier()};
    fail(std::string("unexpected character '") + c + "'");
  }

  Fact read_fact() {
    Fact f;
    f.line = line_;
    if (!std::islower(static_cast<unsigned char>(text_[pos_]))) fail("expected predicate name");
    f.predicate = identifier();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      f.args.push_back(term());
      skip_space();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        f.args.push_back(term());
        skip_space();
      }
      expect(')');
    }
    expect('.');
    return f;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

[[noreturn]] void bad_fact(const Fact& f, const std::string& msg) {
  throw InputError("facts:" + std::to_string(f.line) + ": " + f.predicate + "/" + std::to_string(f.args.size()) +
                   ": " + msg);
}

int number_arg(const Fact& f, std::size_t i) {
  if (f.args[i].type != Term::Type::Number) bad_fact(f, "argument " + std::to_string(i + 1) + " must be an integer");
  if (f.args[i].number < 0 || f.args[i].number > 1'000'000'000) bad_fact(f, "identifier out of range");
  return static_cast<int>(f.args[i].number);
}

}  // namespace

Afw parse_asp_facts(std::string_view text) {
  std::map<int, std::string> props;
  std::map<int, std::string> states;
  std::optional<int> initial;
  struct PendingTransition {
    int state;
    std::set<int> pos, neg, succ;
    LastCondition last = LastCondition::Unconstrained;
    bool declared = false;
    const Fact* first = nullptr;
  };
  std::map<int, PendingTransition> transitions;

  auto facts = FactReader(text).read_all();
  for (const auto& f : facts) {
    const auto arity = f.args.size();
    if (f.predicate == "prop" && arity == 2) {
      int id = number_arg(f, 0);
      if (f.args[1].type != Term::Type::Constant || !is_valid_atom_name(f.args[1].text))
        bad_fact(f, "second argument must be an atom name");
      if (!props.emplace(id, f.args[1].text).second) bad_fact(f, "duplicate proposition id");
    } else if (f.predicate == "state" && arity == 2) {
      int id = number_arg(f, 0);
      if (f.args[1].type != Term::Type::String) bad_fact(f, "label must be a quoted string");
      if (!states.emplace(id, f.args[1].text).second) bad_fact(f, "duplicate state id");
    } else if (f.predicate == "initial_state" && arity == 1) {
      if (initial) bad_fact(f, "duplicate initial_state");
      initial = number_arg(f, 0);
    } else if (f.predicate == "delta" && (arity == 2 || arity == 4)) {
      int state = number_arg(f, 0);
      int tid = number_arg(f, 1);
      auto [it, fresh] = transitions.try_emplace(tid);
      auto& t = it->second;
      if (fresh) {
        t.state = state;
        t.first = &f;
      } else if (t.state != state) {
        bad_fact(f, "transition " + std::to_string(tid) + " used with two source states");
      }
      if (arity == 2) {
        if (t.declared) bad_fact(f, "duplicate transition declaration");
        t.declared = true;
        continue;
      }
      if (f.args[2].type != Term::Type::Constant) bad_fact(f, "third argument must be pos, neg or succ");
      const std::string& role = f.args[2].text;
      const Term& target = f.args[3];
      bool is_last = target.type == Term::Type::Constant && target.text == "last";
      if (role == "pos" || role == "neg") {
        if (is_last) {
          auto want = role == "pos" ? LastCondition::Required : LastCondition::Forbidden;
          if (t.last != LastCondition::Unconstrained && t.last != want) bad_fact(f, "contradictory last conditions");
          t.last = want;
        } else {
          (role == "pos" ? t.pos : t.neg).insert(number_arg(f, 3));
        }
      } else if (role == "succ") {
        t.succ.insert(number_arg(f, 3));
      } else {
        bad_fact(f, "unknown role '" + role + "'");
      }
    } else {
      bad_fact(f, "unknown predicate");
    }
  }

  Afw a;
  int expected = 1;
  for (const auto& [id, name] : props) {
    if (id != expected++) throw InputError("facts: proposition ids must be contiguous from 1");
    if (a.symbols.find(name)) throw InputError("facts: proposition '" + name + "' declared twice");
    a.symbols.add(name);
  }
  expected = 0;
  for (const auto& [id, label] : states) {
    if (id != expected++) throw InputError("facts: state ids must be contiguous from 0");
    std::optional<Formula> formula;
    try {
      formula = parse_formula(label);
    } catch (const InputError&) {
    }
    a.states.push_back(AfwState{label, formula, {}});
  }
  if (!initial) throw InputError("facts: missing initial_state");
  if (!states.contains(*initial)) throw InputError("facts: initial_state refers to unknown state");
  a.initial = *initial;

  expected = 0;
  for (const auto& [tid, t] : transitions) {
    if (!t.declared) bad_fact(*t.first, "transition " + std::to_string(tid) + " has no delta/2 declaration");
    if (tid != expected++) throw InputError("facts: transition ids must be contiguous from 0");
    if (!states.contains(t.state)) bad_fact(*t.first, "unknown source state " + std::to_string(t.state));
    for (int p : t.pos)
      if (!props.contains(p)) bad_fact(*t.first, "unknown proposition " + std::to_string(p));
    for (int n : t.neg) {
      if (!props.contains(n)) bad_fact(*t.first, "unknown proposition " + std::to_string(n));
      if (t.pos.contains(n)) bad_fact(*t.first, "atom both required and forbidden");
    }
    for (int s : t.succ)
      if (!states.contains(s)) bad_fact(*t.first, "unknown successor state " + std::to_string(s));
    a.states[static_cast<std::size_t>(t.state)].transitions.push_back(
        Transition{Cube{{t.pos.begin(), t.pos.end()}, {t.neg.begin(), t.neg.end()}}, t.last, {t.succ.begin(), t.succ.end()}});
  }
  return a;
}

}  // namespace dynaut
