#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynaut/afw.hpp"
#include "dynaut/cli.hpp"
#include "dynaut/error.hpp"
#include "dynaut/export.hpp"
#include "dynaut/fsa.hpp"
#include "dynaut/traces.hpp"

namespace dynaut {

const std::vector<std::string>& bench_families() {
  static const std::vector<std::string> families{"nested-next", "eventually-chain", "until-ladder"};
  return families;
}

Formula bench_formula(const std::string& family, int depth) {
  if (depth < 1) throw InputError("bench depth must be at least 1");
  auto p = [](int i) { return Formula::atom("p" + std::to_string(i)); };
  if (family == "nested-next") {
    // F(p1 & X(p2 & X(... X pd)))
    Formula body = p(depth);
    for (int i = depth - 1; i >= 1; --i) body = Formula::conj(p(i), Formula::next(body));
    return Formula::eventually(body);
  }
  if (family == "eventually-chain") {
    // F(p1 & X F(p2 & X F(... pd)))
    Formula body = Formula::eventually(p(depth));
    for (int i = depth - 1; i >= 1; --i) body = Formula::eventually(Formula::conj(p(i), Formula::next(body)));
    return body;
  }
  if (family == "until-ladder") {
    // p1 U (p2 U (... pd))
    Formula body = p(depth);
    for (int i = depth - 1; i >= 1; --i) body = Formula::until(p(i), body);
    return body;
  }
  throw InputError("unknown formula family '" + family + "'");
}

namespace {

using nlohmann::json;

std::string trace_json(const Trace& t) {
  json letters = json::array();
  for (const auto& letter : t.letters()) letters.push_back(json(std::vector<std::string>(letter.begin(), letter.end())));
  return letters.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula formula_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return parse_formula(read_file(arg.substr(1)));
  return parse_formula(arg);
}

/// Writes to `path` or to `out` when the path is empty or "-".
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  file << text;
  if (!file) throw InputError("cannot write '" + path + "'");
}

std::vector<int> parse_depths(const std::string& spec) {
  std::vector<int> depths;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1 || v > 64) throw CLI::ValidationError("--depths", "bad depth '" + s + "'");
    return v;
  };
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) {
      depths.push_back(number(item));
      continue;
    }
    int lo = number(item.substr(0, dash));
    int hi = number(item.substr(dash + 1));
    if (lo > hi) throw CLI::ValidationError("--depths", "empty range '" + item + "'");
    for (int d = lo; d <= hi; ++d) depths.push_back(d);
  }
  if (depths.empty()) throw CLI::ValidationError("--depths", "no depths given");
  return depths;
}

Dfa dfa_via_mona(const Formula& f, const std::optional<std::string>& mona_flag) {
  auto mona = find_mona(mona_flag);
  if (!mona) throw ExternalToolError("mona not found (use --mona-bin or DYNAUT_MONA)");
  return parse_mona_dot(run_mona(*mona, emit_mona(f)), symbols_of(f));
}

std::string stats_row(const std::string& name, const Stats& s) {
  return name + "," + std::to_string(s.states) + "," + std::to_string(s.transitions) + "," +
         std::to_string(s.max_successors) + "," + std::to_string(s.alphabet) + "\n";
}

std::vector<Trace> bench_sample(int depth, std::size_t count, std::size_t length) {
  std::mt19937_64 rng(12345 + static_cast<std::uint64_t>(depth));
  std::vector<Trace> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Letter> letters(length);
    for (auto& letter : letters)
      for (int i = 1; i <= depth; ++i)
        if (rng() % 2) letter.insert("p" + std::to_string(i));
    out.emplace_back(std::move(letters));
  }
  return out;
}

double millis(std::chrono::steady_clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

struct Options {
  std::string formula;
  std::string formula2;
  std::string to = "afw";
  std::string emit_format = "asp";
  std::string output;
  std::string traces;
  std::string backend = "dfa";
  std::size_t jobs = 1;
  bool via_mona = false;
  std::optional<std::string> mona_bin;
  std::string family;
  std::string depths = "2-6";
  bool sizes_only = false;
  std::uint64_t seed = 1;
  int depth = 3;
  int atoms = 2;
  int count = 10;
};

int cmd_compile(const Options& o, const CLI::App& sub, std::ostream& out) {
  const Formula f = formula_argument(o.formula);
  if (o.emit_format == "mona") {
    if (sub.count("--to") || o.via_mona) throw CLI::ValidationError("--emit mona", "takes the formula directly; drop --to/--via-mona");
    emit(emit_mona(f), o.output, out);
    return exit_code::ok;
  }
  AutomatonView v;
  if (o.via_mona) {
    if (o.to != "dfa" && o.to != "mindfa") throw CLI::ValidationError("--via-mona", "requires --to dfa or --to mindfa");
    Dfa d = dfa_via_mona(f, o.mona_bin);
    v = view(o.to == "mindfa" ? minimize(d) : d);
  } else if (o.to == "afw") {
    v = view(compile_afw(f));
  } else if (o.to == "nfa") {
    v = view(afw_to_nfa(compile_afw(f)));
  } else if (o.to == "dfa") {
    v = view(nfa_to_dfa(afw_to_nfa(compile_afw(f))));
  } else {
    v = view(compile_min_dfa(f));
  }
  emit(o.emit_format == "asp" ? emit_asp_facts(v) : emit_dot(v), o.output, out);
  return exit_code::ok;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err, bool filter) {
  const Formula f = formula_argument(o.formula);
  const TraceCorpus corpus = read_traces_file(o.traces);
  const Backend backend = *parse_backend(o.backend);
  FilterResult r = filter_traces(f, corpus, backend, o.jobs);
  if (filter) {
    std::ostringstream text;
    write_traces(r.accepted, text);
    emit(text.str(), o.output, out);
    err << "filter: backend=" << backend_name(backend) << " total=" << r.report.total
        << " accepted=" << r.report.accepted << " rejected=" << r.report.rejected << " time=" << std::fixed
        << std::setprecision(3) << millis(std::chrono::duration_cast<std::chrono::steady_clock::duration>(r.report.wall_time))
        << "ms\n";
  } else {
    std::ostringstream text;
    for (const auto& v : r.report.verdicts) {
      text << v.id << '\t' << (v.accepted ? "accepted" : "rejected");
      if (v.first_failure) text << "\tfirst_failure=" << *v.first_failure;
      text << '\n';
    }
    emit(text.str(), o.output, out);
  }
  return r.report.accepted > 0 ? exit_code::ok : exit_code::negative;
}

int cmd_empty(const Options& o, std::ostream& out) {
  const Dfa d = compile_min_dfa(formula_argument(o.formula));
  auto w = shortest_witness(d);
  if (!w) {
    out << "language is empty\n";
    return exit_code::negative;
  }
  out << "language is not empty\nwitness " << trace_json(*w) << "\n";
  return exit_code::ok;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const Dfa a = compile_min_dfa(formula_argument(o.formula));
  const Dfa b = compile_min_dfa(formula_argument(o.formula2));
  auto r = equivalent(a, b);
  if (r.equivalent) {
    out << "equivalent\n";
    return exit_code::ok;
  }
  out << "not equivalent\ncounterexample " << trace_json(*r.counterexample) << "\n";
  return exit_code::negative;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const Formula f = formula_argument(o.formula);
  const Afw a = compile_afw(f);
  const Nfa n = afw_to_nfa(a);
  const Dfa d = nfa_to_dfa(n);
  std::string text = "representation,states,transitions,max_successors,alphabet\n";
  text += stats_row("afw", afw_stats(a));
  text += stats_row("nfa", nfa_stats(n));
  text += stats_row("dfa", dfa_stats(d));
  text += stats_row("mindfa", dfa_stats(minimize(d)));
  emit(text, o.output, out);
  return exit_code::ok;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<std::string> families = o.family.empty() ? bench_families() : std::vector<std::string>{o.family};
  const std::vector<int> depths = parse_depths(o.depths);
  std::ostringstream text;
  text << "family,depth,afw_states,afw_transitions,mindfa_states,mindfa_transitions";
  if (!o.sizes_only) text << ",afw_compile_ms,mindfa_compile_ms,afw_traces_per_s,dfa_traces_per_s";
  text << "\n";
  for (const auto& family : families) {
    for (int depth : depths) {
      const Formula f = bench_formula(family, depth);
      auto t0 = std::chrono::steady_clock::now();
      const Afw a = compile_afw(f);
      auto t1 = std::chrono::steady_clock::now();
      const Dfa d = compile_min_dfa(f);
      auto t2 = std::chrono::steady_clock::now();
      const Stats as = afw_stats(a);
      const Stats ds = dfa_stats(d);
      text << family << ',' << depth << ',' << as.states << ',' << as.transitions << ',' << ds.states << ','
           << ds.transitions;
      if (!o.sizes_only) {
        const auto sample = bench_sample(depth, 2000, 10);
        std::size_t sink = 0;
        auto c0 = std::chrono::steady_clock::now();
        for (const auto& t : sample) sink += afw_accepts(a, t);
        auto c1 = std::chrono::steady_clock::now();
        for (const auto& t : sample) sink += dfa_accepts(d, t);
        auto c2 = std::chrono::steady_clock::now();
        (void)sink;
        auto rate = [&](std::chrono::steady_clock::duration dt) {
          double s = std::chrono::duration<double>(dt).count();
          return s > 0 ? static_cast<double>(sample.size()) / s : 0.0;
        };
        text << std::fixed << std::setprecision(3) << ',' << millis(t1 - t0) << ',' << millis(t2 - t1)
             << std::setprecision(0) << ',' << rate(c1 - c0) << ',' << rate(c2 - c1);
        text.unsetf(std::ios::floatfield);
      }
      text << "\n";
    }
  }
  emit(text.str(), o.output, out);
  return exit_code::ok;
}

int cmd_random(const Options& o, std::ostream& out) {
  if (o.atoms < 1 || o.atoms > 26) throw CLI::ValidationError("--atoms", "must be between 1 and 26");
  std::vector<std::string> atoms;
  for (int i = 0; i < o.atoms; ++i) atoms.push_back(std::string(1, static_cast<char>('a' + i)));
  std::ostringstream text;
  for (int i = 0; i < o.count; ++i) text << render(random_formula(o.seed + static_cast<std::uint64_t>(i), o.depth, atoms)) << "\n";
  emit(text.str(), o.output, out);
  return exit_code::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"dynaut: LDLf/LTLf to automata compiler and trace filter", "dynaut"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dynaut 1.0.0");

  const std::vector<std::string> backends{"oracle", "afw", "dfa"};

  auto* compile = app.add_subcommand("compile", "Compile a formula and export the automaton");
  compile->add_option("formula", o.formula, "Formula text or @file")->required();
  compile->add_option("--to", o.to, "Target representation")->check(CLI::IsMember({"afw", "nfa", "dfa", "mindfa"}));
  compile->add_option("--emit", o.emit_format, "Export format")->check(CLI::IsMember({"asp", "dot", "mona"}));
  compile->add_flag("--via-mona", o.via_mona, "Build the DFA with MONA instead of the internal pipeline");
  compile->add_option("--mona-bin", o.mona_bin, "MONA executable");
  compile->add_option("-o,--output", o.output, "Output file (default: standard output)");

  auto* check = app.add_subcommand("check", "Print a verdict for every trace");
  auto* filter = app.add_subcommand("filter", "Keep the traces satisfying the formula");
  for (auto* sub : {check, filter}) {
    sub->add_option("formula", o.formula, "Formula text or @file")->required();
    sub->add_option("traces", o.traces, "Trace file (JSON lines)")->required();
    sub->add_option("--backend", o.backend, "Checking backend")->check(CLI::IsMember(backends));
    sub->add_option("-j,--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("-o,--output", o.output, "Output file (default: standard output)");
  }

  auto* empty = app.add_subcommand("empty", "Decide emptiness; print a shortest witness otherwise");
  empty->add_option("formula", o.formula, "Formula text or @file")->required();

  auto* equiv = app.add_subcommand("equiv", "Decide language equivalence of two formulas");
  equiv->add_option("formula1", o.formula, "Formula text or @file")->required();
  equiv->add_option("formula2", o.formula2, "Formula text or @file")->required();

  auto* stats = app.add_subcommand("stats", "Automaton sizes as CSV");
  stats->add_option("formula", o.formula, "Formula text or @file")->required();
  stats->add_option("-o,--output", o.output, "Output file (default: standard output)");

  auto* bench = app.add_subcommand("bench", "Size and timing table for preset formula families, as CSV");
  bench->add_option("--family", o.family, "Family (default: all)")->check(CLI::IsMember(bench_families()));
  bench->add_option("--depths", o.depths, "Depths, e.g. 2-6 or 2,4,6");
  bench->add_flag("--sizes-only", o.sizes_only, "Omit timing columns");
  bench->add_option("-o,--output", o.output, "Output file (default: standard output)");

  auto* random = app.add_subcommand("random", "Print seeded random formulas");
  random->add_option("--seed", o.seed, "First seed");
  random->add_option("--depth", o.depth, "Maximum depth")->check(CLI::Range(1, 12));
  random->add_option("--atoms", o.atoms, "Number of atoms (a, b, ...)");
  random->add_option("--count", o.count, "Number of formulas")->check(CLI::Range(0, 1000000));
  random->add_option("-o,--output", o.output, "Output file (default: standard output)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "dynaut: " << e.what() << "\n";
    return exit_code::usage;
  }

  try {
    if (compile->parsed()) return cmd_compile(o, *compile, out);
    if (check->parsed()) return cmd_check(o, out, err, false);
    if (filter->parsed()) return cmd_check(o, out, err, true);
    if (empty->parsed()) return cmd_empty(o, out);
    if (equiv->parsed()) return cmd_equiv(o, out);
    if (stats->parsed()) return cmd_stats(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (random->parsed()) return cmd_random(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "dynaut: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const ExternalToolError& e) {
    err << "dynaut: " << e.what() << "\n";
    return exit_code::external;
  } catch (const Error& e) {
    err << "dynaut: " << e.what() << "\n";
    return exit_code::input;
  } catch (const std::exception& e) {
    err << "dynaut: " << e.what() << "\n";
    return exit_code::input;
  }
  err << "dynaut: no subcommand\n";
  return exit_code::usage;
}

}  // namespace dynaut
