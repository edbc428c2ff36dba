#include <sstream>

#include "dynaut/export.hpp"

namespace dynaut {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string condition_label(const SymbolTable& symbols, const ViewTransition& t) {
  std::string out;
  auto add = [&](const std::string& lit) {
    if (!out.empty()) out += " & ";
    out += lit;
  };
  for (int p : t.pos) add(symbols.name(p));
  for (int n : t.neg) add("~" + symbols.name(n));
  if (t.last == LastCondition::Required) add("last");
  if (t.last == LastCondition::Forbidden) add("~last");
  return out.empty() ? "true" : out;
}

}  // namespace

std::string emit_dot(const AutomatonView& v) {
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  init [shape=point, style=invis];\n";
  for (std::size_t s = 0; s < v.state_labels.size(); ++s)
    out << "  s" << s << " [label=\"" << escape(v.state_labels[s]) << "\"];\n";
  out << "  init -> s" << v.initial << ";\n";
  for (const auto& t : v.transitions) {
    const std::string label = escape(condition_label(v.symbols, t));
    if (t.successors.size() == 1) {
      out << "  s" << t.source << " -> s" << t.successors.front() << " [label=\"" << label << "\"];\n";
      continue;
    }
    const std::string junction = "t" + std::to_string(t.id);
    out << "  " << junction << " [shape=point, width=0.08];\n";
    out << "  s" << t.source << " -> " << junction << " [label=\"" << label << "\", arrowhead=none];\n";
    for (int succ : t.successors) out << "  " << junction << " -> s" << succ << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dynaut
