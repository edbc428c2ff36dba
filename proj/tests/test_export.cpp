#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "dynaut/error.hpp"
#include "dynaut/export.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dynaut;

namespace {

Formula p(const std::string& s) { return parse_formula(s); }

bool contains(const std::string& text, const std::string& line) { return text.find(line) != std::string::npos; }

void check_round_trip(const AutomatonView& v) {
  const std::string facts = emit_asp_facts(v);
  const Afw back = parse_asp_facts(facts);
  CHECK(view(back) == v);
  CHECK(emit_asp_facts(view(back)) == facts);
}

}  // namespace

TEST_CASE("ASP facts for the running example") {
  const std::string facts = emit_asp_facts(view(compile_afw(p(support::example_dynamic))));
  CHECK(contains(facts, "prop(1,b).\nprop(2,a).\n"));
  CHECK(contains(facts, "initial_state(0).\n"));
  CHECK(contains(facts, "delta(0,0).\ndelta(0,0,pos,1).\ndelta(0,0,neg,last).\ndelta(0,0,succ,1).\ndelta(0,0,succ,2).\n"));
  CHECK(contains(facts, "delta(2,2,pos,last).\n"));
  CHECK(contains(facts, "state(2,\"([ true* ] b)\").\n"));
}

TEST_CASE("ASP facts for tt") {
  CHECK(emit_asp_facts(view(compile_afw(Formula::tt()))) == "state(0,\"tt\").\ninitial_state(0).\ndelta(0,0).\n");
}

TEST_CASE("ASP round-trips") {
  check_round_trip(view(compile_afw(p(support::example_dynamic))));
  check_round_trip(view(compile_afw(Formula::tt())));
  check_round_trip(view(compile_afw(Formula::ff())));
  for (const auto& f : support::random_suite(100)) {
    const Afw a = compile_afw(f);
    check_round_trip(view(a));
    check_round_trip(view(afw_to_nfa(a)));
    check_round_trip(view(compile_min_dfa(f)));
  }
}

TEST_CASE("re-ingested automata keep their language") {
  for (const auto& f : support::random_suite(60)) {
    const Afw a = compile_afw(f);
    const Afw from_afw = parse_asp_facts(emit_asp_facts(view(a)));
    const Afw from_nfa = parse_asp_facts(emit_asp_facts(view(afw_to_nfa(a))));
    const Afw from_dfa = parse_asp_facts(emit_asp_facts(view(compile_min_dfa(f))));
    for (const auto& t : support::traces_ab(4)) {
      const bool expected = oracle::accepts(f, t);
      CHECK(afw_accepts(from_afw, t) == expected);
      CHECK(afw_accepts(from_nfa, t) == expected);
      CHECK(afw_accepts(from_dfa, t) == expected);
    }
  }
}

TEST_CASE("DFA views have singleton or empty successor sets") {
  for (const auto& f : support::random_suite(60))
    for (const auto& t : view(compile_min_dfa(f)).transitions) CHECK(t.successors.size() <= 1);
}

TEST_CASE("fact parser: comments, whitespace, errors") {
  const Afw a = parse_asp_facts("% header\nprop(1,a).  state(0, \"a\").\ninitial_state(0).\n"
                                "delta(0,0). delta(0,0,pos,1). % trailing\n");
  REQUIRE(a.states.size() == 1);
  CHECK(a.states[0].formula == p("a"));
  CHECK(a.states[0].transitions.size() == 1);
  CHECK(afw_accepts(a, Trace{{"a"}}));

  const std::string ok = "state(0,\"tt\").\ninitial_state(0).\ndelta(0,0).\n";
  CHECK_NOTHROW(parse_asp_facts(ok));
  CHECK_THROWS_AS(parse_asp_facts(ok + "initial_state(0).\n"), InputError);        // duplicate initial
  CHECK_THROWS_AS(parse_asp_facts(ok + "delta(0,0,succ,5).\n"), InputError);       // dangling state
  CHECK_THROWS_AS(parse_asp_facts(ok + "delta(0,0,pos,1).\n"), InputError);        // dangling prop
  CHECK_THROWS_AS(parse_asp_facts(ok + "delta(0,1,succ,0).\n"), InputError);       // undeclared transition
  CHECK_THROWS_AS(parse_asp_facts("state(0,\"tt\").\ndelta(0,0).\n"), InputError);  // no initial state
  CHECK_THROWS_AS(parse_asp_facts(ok + "delta(0,0"), InputError);                  // malformed
  CHECK_THROWS_AS(parse_asp_facts(ok + "foo(1).\n"), InputError);                  // unknown predicate
  CHECK_THROWS_AS(parse_asp_facts(ok + "state(2,\"x\").\n"), InputError);           // ids not dense
  try {
    parse_asp_facts("state(0,\"tt\").\ninitial_state(0).\ndelta(0,0,bad,1).\n");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(contains(e.what(), "facts:3"));
  }
}

TEST_CASE("DOT output") {
  const std::string dot = emit_dot(view(compile_afw(p(support::example_dynamic))));
  CHECK(dot.rfind("digraph automaton {", 0) == 0);
  CHECK(dot.back() == '\n');
  CHECK(contains(dot, "s0 -> t0 [label=\"b & ~last\", arrowhead=none];"));
  CHECK(contains(dot, "t0 -> s1;"));
  CHECK(contains(dot, "t0 -> s2;"));
  CHECK(contains(dot, "s2 -> s2 [label=\"b & ~last\"];"));
  CHECK(contains(dot, "s2 -> t2 [label=\"b & last\", arrowhead=none];"));
  const std::string tt = emit_dot(view(compile_afw(Formula::tt())));
  CHECK(contains(tt, "s0 [label=\"tt\"];"));
  CHECK(contains(tt, "s0 -> t0 [label=\"true\", arrowhead=none];"));

  // Every statement line is a node, an edge or a graph attribute.
  static const std::regex statement(
      R"(^  (rankdir=LR|node \[shape=circle\]|[a-z]+\d*( -> [a-z]+\d*)?( \[("([^"\\]|\\.)*"|[^\]"])*\])?);$)");
  for (const auto& f : support::random_suite(40)) {
    const std::string text = emit_dot(view(compile_afw(f)));
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "digraph automaton {");
    int braces = 1;
    while (std::getline(lines, line)) {
      if (line == "}") {
        --braces;
        continue;
      }
      CHECK_MESSAGE(std::regex_match(line, statement), line);
    }
    CHECK(braces == 0);
  }
}

TEST_CASE("exports are deterministic") {
  for (const auto& f : support::random_suite(30)) {
    CHECK(emit_asp_facts(view(compile_min_dfa(f))) == emit_asp_facts(view(compile_min_dfa(f))));
    CHECK(emit_dot(view(compile_afw(f))) == emit_dot(view(compile_afw(f))));
    CHECK(emit_mona(f) == emit_mona(f));
  }
}

TEST_CASE("MONA programs") {
  CHECK(emit_mona(p("a")) == "# a\nm2l-str;\nvar2 A;\n0 in A;\n");
  CHECK(emit_mona(Formula::tt()) == "# tt\nm2l-str;\ntrue;\n");
  const std::string example = emit_mona(p(support::example_dynamic));
  CHECK(contains(example, "var2 B, A;"));
  CHECK(contains(example, "all2 "));
  CHECK(mona_variable("foo_1") == "Foo_1");
}

TEST_CASE("MONA DOT ingestion") {
  // Automaton for `a` in MONA's export layout: a dummy first step, then one letter.
  const std::string dot = R"(digraph MONA_DFA {
 rankdir = LR;
 center = true;
 size = "7.5,10.5";
 edge [fontname = Courier];
 node [height = .5, width = .5];
 node [shape = doublecircle]; 2;
 node [shape = circle]; 0; 1; 3;
 node [shape = box];
 init [shape = plaintext, label = ""];
 init -> 0;
 0 -> 1 [label="X"];
 1 -> 2 [label="1"];
 1 -> 3 [label="0"];
 2 -> 2 [label="X"];
 3 -> 3 [label="X"];
})";
  SymbolTable s;
  s.add("a");
  const Dfa d = parse_mona_dot(dot, s);
  CHECK(equivalent(d, compile_min_dfa(p("a"))).equivalent);
  CHECK(minimize(d).state_count() == compile_min_dfa(p("a")).state_count());

  const std::string tt = R"(digraph MONA_DFA {
 node [shape = doublecircle]; 1;
 init -> 0;
 0 -> 1 [label=""];
 1 -> 1 [label=""];
})";
  const Dfa t = parse_mona_dot(tt, SymbolTable{});
  CHECK(equivalent(t, compile_min_dfa(Formula::tt())).equivalent);

  SymbolTable two;
  two.add("a");
  two.add("b");
  CHECK_THROWS_AS(parse_mona_dot(dot, two), InputError);   // variable-count mismatch
  CHECK_THROWS_AS(parse_mona_dot("digraph {}", s), InputError);  // no initial state
}

TEST_CASE("MONA lookup") {
  CHECK_THROWS_AS(find_mona(std::string("/nonexistent/mona")), ExternalToolError);
}

TEST_CASE("MONA process plumbing with a stub executable") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dynaut_stub_mona";
  fs::create_directories(dir);
  const fs::path stub = dir / "mona";
  {
    std::ofstream out(stub);
    out << "#!/bin/sh\n"
           "# prints the automaton for `a` after checking its arguments\n"
           "[ \"$1\" = -q ] && [ \"$2\" = -gw ] && grep -q 'var2 A;' \"$3\" || { echo bad input >&2; exit 1; }\n"
           "echo 'DFA for a:'\n"
           "cat <<'DOT'\n"
           "digraph MONA_DFA {\n node [shape = doublecircle]; 2;\n init -> 0;\n"
           " 0 -> 1 [label=\"X\"];\n 1 -> 2 [label=\"1\"];\n 1 -> 3 [label=\"0\"];\n"
           " 2 -> 2 [label=\"X\"];\n 3 -> 3 [label=\"X\"];\n}\nDOT\n";
  }
  fs::permissions(stub, fs::perms::owner_all);
  REQUIRE(find_mona(stub.string()) == stub);
  const std::string dot = run_mona(stub, emit_mona(p("a")));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(equivalent(parse_mona_dot(dot, symbols_of(p("a"))), compile_min_dfa(p("a"))).equivalent);
  CHECK_THROWS_AS(run_mona(stub, emit_mona(p("b"))), ExternalToolError);
  fs::remove_all(dir);
}
