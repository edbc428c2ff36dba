#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unistd.h>
#include <sys/wait.h>

#include "dynaut/error.hpp"
#include "dynaut/export.hpp"

namespace dynaut {

std::string mona_variable(const std::string& atom) {
  std::string v = atom;
  v[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
  return v;
}

// ---------------------------------------------------------------------------
// Program generation

namespace {

class MonaWriter {
 public:
  std::string formula(const Formula& f, const std::string& x) {
    switch (f.kind()) {
      case Kind::True:
        return "true";
      case Kind::False:
        return "false";
      case Kind::Atom:
        return x + " in " + mona_variable(f.name());
      case Kind::Not:
        return "~(" + formula(f.operand(), x) + ")";
      case Kind::And:
        return "(" + formula(f.lhs(), x) + " & " + formula(f.rhs(), x) + ")";
      case Kind::Or:
        return "(" + formula(f.lhs(), x) + " | " + formula(f.rhs(), x) + ")";
      case Kind::Diamond: {
        std::string y = fresh1();
        return "(ex1 " + y + ": (" + y + " <= max($) & " + relation(f.path(), x, y) + " & " + formula(f.operand(), y) +
               "))";
      }
      case Kind::Box: {
        std::string y = fresh1();
        return "(all1 " + y + ": ((" + y + " <= max($) & " + relation(f.path(), x, y) + ") => " +
               formula(f.operand(), y) + "))";
      }
      default:
        throw Error("emit_mona: unexpected operator after desugaring");
    }
  }

 private:
  std::string relation(const Path& p, const std::string& x, const std::string& y) {
    switch (p.kind()) {
      case PathKind::Prop:
        return "(" + y + " = " + x + " + 1 & " + formula(p.formula(), x) + ")";
      case PathKind::Test:
        return "(" + y + " = " + x + " & " + formula(p.formula(), x) + ")";
      case PathKind::Seq: {
        std::string z = fresh1();
        return "(ex1 " + z + ": (" + z + " <= max($) & " + relation(p.first(), x, z) + " & " + relation(p.second(), z, y) +
               "))";
      }
      case PathKind::Alt:
        return "(" + relation(p.first(), x, y) + " | " + relation(p.second(), x, y) + ")";
      case PathKind::Star: {
        std::string s = fresh2();
        std::string u = fresh1();
        std::string v = fresh1();
        return "(all2 " + s + ": ((" + x + " in " + s + " & (all1 " + u + ", " + v + ": ((" + u + " in " + s + " & " +
               v + " <= max($) & " + relation(p.body(), u, v) + ") => " + v + " in " + s + "))) => " + y + " in " +
               s + "))";
      }
    }
    throw Error("emit_mona: unknown path operator");
  }

  std::string fresh1() { return "p" + std::to_string(next_++); }
  std::string fresh2() { return "s" + std::to_string(next_++); }

  int next_ = 0;
};

}  // namespace

std::string emit_mona(const Formula& f) {
  const Formula core = desugar(f);
  const SymbolTable symbols = symbols_of(f);
  std::ostringstream out;
  out << "# " << render(f) << "\n";
  out << "m2l-str;\n";
  if (symbols.size() > 0) {
    out << "var2 ";
    for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? ", " : "") << mona_variable(symbols.names()[i]);
    out << ";\n";
  }
  out << MonaWriter().formula(core, "0") << ";\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// DOT reader

namespace {

Cube label_cube(const std::string& bits, std::size_t vars) {
  if (bits.size() != vars)
    throw InputError("mona: edge label '" + bits + "' has " + std::to_string(bits.size()) + " variables, expected " +
                     std::to_string(vars));
  Cube c;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (bits[i] == '1') {
      c.pos.push_back(id);
    } else if (bits[i] == '0') {
      c.neg.push_back(id);
    } else if (bits[i] != 'X') {
      throw InputError("mona: bad character '" + std::string(1, bits[i]) + "' in edge label");
    }
  }
  return c;
}

}  // namespace

Dfa parse_mona_dot(std::string_view text, const SymbolTable& symbols) {
  const std::string body(text);
  const std::size_t vars = symbols.size();

  std::optional<int> initial;
  std::set<int> accepting;
  std::set<int> states;
  std::map<int, std::vector<std::pair<Cube, int>>> edges;

  static const std::regex init_re(R"(init\s*->\s*(\d+)\s*;)");
  static const std::regex accept_re(R"(node\s*\[\s*shape\s*=\s*doublecircle\s*\]\s*;([^\n]*))");
  static const std::regex edge_re(R"((\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*\"([^\"]*)\"\s*\]\s*;)");
  static const std::regex number_re(R"(\d+)");

  std::smatch m;
  if (std::regex_search(body, m, init_re)) initial = std::stoi(m[1]);
  if (!initial) throw InputError("mona: no initial state in automaton output");
  states.insert(*initial);
  if (std::regex_search(body, m, accept_re)) {
    const std::string list = m[1];
    for (std::sregex_iterator it(list.begin(), list.end(), number_re), end; it != end; ++it)
      accepting.insert(std::stoi(it->str()));
  }
  for (std::sregex_iterator it(body.begin(), body.end(), edge_re), end; it != end; ++it) {
    int from = std::stoi((*it)[1]);
    int to = std::stoi((*it)[2]);
    states.insert(from);
    states.insert(to);
    std::string label = (*it)[3];
    std::size_t start = 0;
    for (;;) {
      std::size_t nl = label.find("\\n", start);
      std::string bits = label.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
      edges[from].emplace_back(label_cube(bits, vars), to);
      if (nl == std::string::npos) break;
      start = nl + 2;
    }
  }

  // MONA automata read one don't-care letter before the first position.
  int start_state = *initial;
  if (const auto it = edges.find(start_state);
      it != edges.end() && !accepting.contains(start_state) && it->second.size() == 1 && it->second.front().first.is_true())
    start_state = it->second.front().second;

  std::vector<Cube> conds;
  for (const auto& [from, out] : edges)
    for (const auto& [cube, to] : out) conds.push_back(cube);
  std::vector<Cube> minterms = minterms_for(conds);
  const std::size_t letters = 2 * minterms.size();

  // Our states: MONA states in order, then the accept-and-stop and rejecting sinks.
  std::map<int, int> index;
  for (int s : states) index.emplace(s, static_cast<int>(index.size()));
  const int final_state = static_cast<int>(index.size());
  const int dead_state = final_state + 1;
  const std::size_t count = index.size() + 2;

  std::vector<int> table(count * letters, dead_state);
  std::vector<bool> accept(count, false);
  std::vector<std::string> labels(count);
  accept[static_cast<std::size_t>(final_state)] = true;
  labels[static_cast<std::size_t>(final_state)] = "final";
  labels[static_cast<std::size_t>(dead_state)] = "dead";
  for (const auto& [s, id] : index) {
    labels[static_cast<std::size_t>(id)] = "m" + std::to_string(s);
    for (std::size_t k = 0; k < minterms.size(); ++k) {
      std::optional<int> to;
      for (const auto& [cube, target] : edges[s])
        if (implies(minterms[k], cube)) {
          to = target;
          break;
        }
      if (!to) continue;
      const std::size_t row = static_cast<std::size_t>(id) * letters;
      table[row + Dfa::letter(k, false)] = index.at(*to);
      table[row + Dfa::letter(k, true)] = accepting.contains(*to) ? final_state : dead_state;
    }
  }
  return Dfa(symbols, std::move(minterms), index.at(start_state), std::move(table), std::move(accept),
             std::move(labels));
}

// ---------------------------------------------------------------------------
// Process handling

namespace {

bool executable(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

class TempFile {
 public:
  explicit TempFile(const std::string& suffix) {
    std::string pattern = (std::filesystem::temp_directory_path() / ("dynaut-XXXXXX" + suffix)).string();
    int fd = ::mkstemps(pattern.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw ExternalToolError("cannot create temporary file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::optional<std::filesystem::path> find_mona(const std::optional<std::string>& flag) {
  if (flag) {
    if (!executable(*flag)) throw ExternalToolError("mona executable not found: " + *flag);
    return std::filesystem::path(*flag);
  }
  if (const char* env = std::getenv("DYNAUT_MONA"); env && *env) {
    if (!executable(env)) throw ExternalToolError(std::string("DYNAUT_MONA does not name an executable: ") + env);
    return std::filesystem::path(env);
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / "mona";
    if (executable(candidate)) return candidate;
  }
  return std::nullopt;
}

std::string run_mona(const std::filesystem::path& mona, const std::string& program) {
  TempFile input(".mona");
  TempFile errors(".err");
  {
    std::ofstream out(input.path());
    out << program;
    if (!out) throw ExternalToolError("cannot write " + input.path().string());
  }
  const std::string command = shell_quote(mona.string()) + " -q -gw " + shell_quote(input.path().string()) + " 2>" +
                              shell_quote(errors.path().string());
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw ExternalToolError("cannot start " + mona.string());
  std::string output;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::ifstream err(errors.path());
    std::string detail((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    throw ExternalToolError("mona failed: " + (detail.empty() ? output : detail));
  }
  auto begin = output.find("digraph");
  auto end = output.rfind('}');
  if (begin == std::string::npos || end == std::string::npos || end < begin)
    throw ExternalToolError("mona produced no automaton");
  return output.substr(begin, end - begin + 1);
}

}  // namespace dynaut
