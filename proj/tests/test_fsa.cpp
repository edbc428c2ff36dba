#include <doctest.h>

#include <map>
#include <set>

#include "dynaut/cli.hpp"
#include "dynaut/fsa.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dynaut;

namespace {

Formula p(const std::string& s) { return parse_formula(s); }

std::set<std::vector<std::string>> obligation_labels(const Nfa& n) {
  std::set<std::vector<std::string>> out;
  for (const auto& s : n.states) {
    std::vector<std::string> labels;
    for (int q : s.obligations) labels.push_back(n.afw_labels[static_cast<std::size_t>(q)]);
    std::sort(labels.begin(), labels.end());
    out.insert(labels);
  }
  return out;
}

}  // namespace

TEST_CASE("minterms partition the valuations") {
  CHECK(minterms_for({}) == std::vector<Cube>{Cube{}});
  auto m = minterms_for({Cube{{1}, {}}, Cube{{1, 2}, {}}, Cube{{}, {3}}});
  // every valuation over atoms 1..3 lies in exactly one minterm
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<int> letter;
    for (int i = 0; i < 3; ++i)
      if (bits & (1 << i)) letter.push_back(i + 1);
    int hits = 0;
    for (const auto& c : m) hits += satisfies(letter, c);
    CHECK(hits == 1);
  }
  for (const auto& c : m)
    for (const auto& cond : {Cube{{1}, {}}, Cube{{1, 2}, {}}, Cube{{}, {3}}})
      CHECK((implies(c, cond) || disjoint(c, cond)));
}

TEST_CASE("running example dealternation") {
  const Nfa n = afw_to_nfa(compile_afw(p(support::example_dynamic)));
  const std::string phi = render(p(support::example_dynamic));
  CHECK(obligation_labels(n) == std::set<std::vector<std::string>>{
                                    {phi}, {"([ true* ] b)", "a"}, {"([ true* ] b)"}, {}});
  CHECK(n.discharged >= 0);
}

TEST_CASE("tt dealternation has two states") {
  const Nfa n = afw_to_nfa(compile_afw(Formula::tt()));
  CHECK(n.states.size() == 2);
}

TEST_CASE("ff determinizes to one rejecting sink") {
  const Dfa d = compile_min_dfa(Formula::ff());
  CHECK(d.state_count() == 1);
  CHECK_FALSE(d.accepting(0));
  CHECK(is_empty(d));
}

TEST_CASE("running example: DFA verdicts equal the oracle up to length 5") {
  const Formula f = p(support::example_dynamic);
  const Dfa d = nfa_to_dfa(afw_to_nfa(compile_afw(f)));
  const Dfa m = minimize(d);
  for (const auto& t : support::traces_ab(5)) {
    CHECK(dfa_accepts(d, t) == oracle::accepts(f, t));
    CHECK(dfa_accepts(m, t) == oracle::accepts(f, t));
  }
  CHECK(m.state_count() == 5);
  CHECK(dfa_accepts(m, Trace{{"b"}, {"a", "b"}}));
  CHECK_FALSE(dfa_accepts(m, Trace{{"b"}, {"a"}}));
  CHECK_FALSE(dfa_accepts(m, Trace{{"b"}}));
  CHECK(dfa_accepts(compile_min_dfa(Formula::tt()), Trace{{}}));
}

TEST_CASE("four-way agreement on the random suite") {
  int mismatches = 0;
  for (const auto& f : support::random_suite(200)) {
    const Afw a = compile_afw(f);
    const Nfa n = afw_to_nfa(a);
    const Dfa d = nfa_to_dfa(n);
    const Dfa m = minimize(d);
    for (const auto& t : support::traces_ab(4)) {
      const bool expected = oracle::accepts(f, t);
      if (nfa_accepts(n, t) != expected || dfa_accepts(d, t) != expected || dfa_accepts(m, t) != expected)
        ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("minimization: idempotent, language preserving, canonical size") {
  for (const auto& f : support::random_suite(200)) {
    const Dfa d = nfa_to_dfa(afw_to_nfa(compile_afw(f)));
    const Dfa m = minimize(d);
    CHECK(m.state_count() <= d.state_count());
    CHECK(minimize(m).state_count() == m.state_count());
    CHECK(equivalent(d, m).equivalent);
  }
  CHECK(compile_min_dfa(p("a | ~a & a")).state_count() == compile_min_dfa(p("a")).state_count());
}

TEST_CASE("emptiness") {
  CHECK(is_empty(compile_min_dfa(p("a & ~a"))));
  CHECK_FALSE(is_empty(compile_min_dfa(p(support::example_dynamic))));
  CHECK(is_empty(compile_min_dfa(p("LAST & X a"))));
  for (const auto& t : support::traces_ab(4)) CHECK_FALSE(oracle::accepts(p("LAST & X a"), t));
}

TEST_CASE("shortest witnesses") {
  auto w = shortest_witness(compile_min_dfa(p("<true> tt")));
  REQUIRE(w);
  CHECK(w->length() == 2);
  w = shortest_witness(compile_min_dfa(Formula::tt()));
  REQUIRE(w);
  CHECK(w->length() == 1);
  CHECK_FALSE(shortest_witness(compile_min_dfa(p("a & ~a"))));
}

TEST_CASE("witnesses are sound and minimal") {
  for (const auto& f : support::random_suite(200)) {
    const Dfa d = compile_min_dfa(f);
    auto w = shortest_witness(d);
    CHECK(w.has_value() == !is_empty(d));
    if (!w) {
      for (const auto& t : support::traces_ab(4)) CHECK_FALSE(oracle::accepts(f, t));
      continue;
    }
    CHECK(oracle::accepts(f, *w));
    for (const auto& t : support::traces_ab(std::min<std::size_t>(4, w->length())))
      if (t.length() < w->length()) CHECK_FALSE(oracle::accepts(f, t));
  }
}

TEST_CASE("equivalence") {
  CHECK(equivalent(compile_min_dfa(p(support::example_dynamic)), compile_min_dfa(p(support::example_temporal))).equivalent);
  auto r = equivalent(compile_min_dfa(p("a")), compile_min_dfa(p("b")));
  CHECK_FALSE(r.equivalent);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->length() == 1);
  CHECK(oracle::accepts(p("a"), *r.counterexample) != oracle::accepts(p("b"), *r.counterexample));
  // counterexamples distinguish the formulas
  const auto suite = support::random_suite(60);
  for (std::size_t i = 0; i + 1 < suite.size(); ++i) {
    auto e = equivalent(compile_min_dfa(suite[i]), compile_min_dfa(suite[i + 1]));
    if (e.equivalent) {
      for (const auto& t : support::traces_ab(4))
        CHECK(oracle::accepts(suite[i], t) == oracle::accepts(suite[i + 1], t));
    } else {
      REQUIRE(e.counterexample);
      CHECK(oracle::accepts(suite[i], *e.counterexample) != oracle::accepts(suite[i + 1], *e.counterexample));
    }
  }
}

TEST_CASE("first_failure") {
  const Dfa d = compile_min_dfa(p(support::example_dynamic));
  CHECK_FALSE(first_failure(d, Trace{{"b"}, {"a", "b"}}));
  CHECK(first_failure(d, Trace{{"b"}, {"a"}}) == 1u);
  CHECK(first_failure(d, Trace{{}, {"a", "b"}}) == 0u);
  CHECK(first_failure(d, Trace{{"b"}}) == 0u);
  for (const auto& f : support::random_suite(50)) {
    const Dfa m = compile_min_dfa(f);
    for (const auto& t : support::traces_ab(3)) {
      auto ff = first_failure(m, t);
      CHECK(ff.has_value() == !dfa_accepts(m, t));
      if (ff) CHECK(*ff < t.length());
    }
  }
}

TEST_CASE("stats") {
  const Formula f = p(support::example_dynamic);
  const Nfa n = afw_to_nfa(compile_afw(f));
  CHECK(nfa_stats(n).states == 4);
  CHECK(dfa_stats(compile_min_dfa(f)).states == 5);
}

TEST_CASE("golden benchmark sizes") {
  // (afw states, min-DFA states) at depths 2..6, fixed at the first verified build.
  const std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> golden{
      {"nested-next", {{2, 5}, {3, 7}, {4, 11}, {5, 19}, {6, 35}}},
      {"eventually-chain", {{2, 5}, {3, 6}, {4, 7}, {5, 8}, {6, 9}}},
      {"until-ladder", {{1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 8}}},
  };
  for (const auto& [family, sizes] : golden) {
    for (int depth = 2; depth <= 6; ++depth) {
      const Formula f = bench_formula(family, depth);
      CHECK(afw_stats(compile_afw(f)).states == sizes[static_cast<std::size_t>(depth - 2)].first);
      CHECK(dfa_stats(compile_min_dfa(f)).states == sizes[static_cast<std::size_t>(depth - 2)].second);
    }
  }
}
