#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dynaut/cli.hpp"
#include "dynaut/export.hpp"
#include "dynaut/fsa.hpp"
#include "support.hpp"

using namespace dynaut;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string grid = std::string(DYNAUT_DATA_DIR) + "/grid_corpus.jsonl";
const std::string grid_constraint = "@" + std::string(DYNAUT_DATA_DIR) + "/grid_constraint.ldlf";

}  // namespace

TEST_CASE("compile --to mindfa --emit asp on the running example") {
  auto r = cli({"compile", "--to", "mindfa", "--emit", "asp", support::example_dynamic});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out == emit_asp_facts(view(compile_min_dfa(parse_formula(support::example_dynamic)))));
  CHECK(cli({"compile", "--to", "mindfa", "--emit", "asp", support::example_dynamic}).out == r.out);
}

TEST_CASE("compile variants") {
  for (const char* to : {"afw", "nfa", "dfa", "mindfa"})
    for (const char* emit : {"asp", "dot"}) CHECK(cli({"compile", "--to", to, "--emit", emit, "G b & X a"}).code == 0);
  auto m = cli({"compile", "--emit", "mona", "a"});
  CHECK(m.code == 0);
  CHECK(m.out.find("0 in A;") != std::string::npos);
  CHECK(cli({"compile", "--emit", "mona", "--to", "dfa", "a"}).code == 1);
  CHECK(cli({"compile", "--via-mona", "--to", "afw", "a"}).code == 1);
  CHECK(cli({"compile", "--to", "tree", "a"}).code == 1);
  CHECK(cli({"compile", "--via-mona", "--to", "dfa", "--mona-bin", "/nonexistent/mona", "a"}).code == 4);

  const auto path = std::filesystem::temp_directory_path() / "dynaut_cli_test.lp";
  CHECK(cli({"compile", "-o", path.string(), "a"}).code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == emit_asp_facts(view(compile_afw(parse_formula("a")))));
  std::filesystem::remove(path);
}

TEST_CASE("formula from file and input errors") {
  CHECK(cli({"empty", grid_constraint}).code == 0);
  auto bad = cli({"empty", "a &"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("1:4") != std::string::npos);
  CHECK(cli({"empty", "@/nonexistent/file"}).code == 2);
  CHECK(cli({"check", "a", "/nonexistent/traces"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"equiv", "a"}).code == 1);
  CHECK(cli({"bench", "--family", "nope"}).code == 1);
  CHECK(cli({"bench", "--depths", "5-2"}).code == 1);
  auto help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("compile") != std::string::npos);
}

TEST_CASE("empty") {
  auto r = cli({"empty", "a & ~a"});
  CHECK(r.code == 3);
  CHECK(r.out == "language is empty\n");
  r = cli({"empty", "<true> tt"});
  CHECK(r.code == 0);
  CHECK(r.out == "language is not empty\nwitness [[],[]]\n");
}

TEST_CASE("equiv") {
  auto r = cli({"equiv", support::example_dynamic, support::example_temporal});
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent\n");
  r = cli({"equiv", "a", "b"});
  CHECK(r.code == 3);
  CHECK(r.out.rfind("not equivalent\ncounterexample ", 0) == 0);
}

TEST_CASE("check and filter") {
  auto r = cli({"check", grid_constraint, grid});
  CHECK(r.code == 0);
  CHECK(r.out.find("r01\taccepted\n") != std::string::npos);
  CHECK(r.out.find("r03\trejected\tfirst_failure=1\n") != std::string::npos);
  auto f1 = cli({"filter", grid_constraint, grid, "--backend", "afw"});
  auto f4 = cli({"filter", grid_constraint, grid, "--backend", "oracle", "--jobs", "4"});
  CHECK(f1.code == 0);
  CHECK(f1.out == f4.out);
  CHECK(f1.err.rfind("filter: backend=afw total=10 accepted=5 rejected=5", 0) == 0);
  CHECK(cli({"filter", "a & ~a", grid}).code == 3);
  CHECK(cli({"filter", "a", grid, "--backend", "mona"}).code == 1);
}

TEST_CASE("stats and bench") {
  auto s = cli({"stats", support::example_dynamic});
  CHECK(s.code == 0);
  CHECK(s.out.find("afw,3,4,2,2\n") != std::string::npos);
  CHECK(s.out.find("mindfa,5,") != std::string::npos);
  auto b = cli({"bench", "--family", "nested-next", "--depths", "2,3", "--sizes-only"});
  CHECK(b.code == 0);
  CHECK(b.out ==
        "family,depth,afw_states,afw_transitions,mindfa_states,mindfa_transitions\n"
        "nested-next,2,2,3,5,18\n"
        "nested-next,3,3,4,7,56\n");
  auto timed = cli({"bench", "--family", "until-ladder", "--depths", "2"});
  CHECK(timed.out.find("afw_traces_per_s") != std::string::npos);
}

TEST_CASE("random") {
  auto r = cli({"random", "--seed", "7", "--count", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == cli({"random", "--seed", "7", "--count", "3"}).out);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(render(parse_formula(line)) == line);
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("bench families") {
  CHECK(render(bench_formula("nested-next", 3)) == "(F (p1 & (X (p2 & (X p3)))))");
  CHECK(render(bench_formula("eventually-chain", 2)) == "(F (p1 & (X (F p2))))");
  CHECK(render(bench_formula("until-ladder", 3)) == "(p1 U (p2 U p3))");
}
