#include <doctest.h>

#include <set>

#include "dynaut/afw.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dynaut;

namespace {
Formula p(const std::string& s) { return parse_formula(s); }
}  // namespace

TEST_CASE("running example automaton") {
  const Afw a = compile_afw(p(support::example_dynamic));
  REQUIRE(a.states.size() == 3);
  const int b = *a.symbols.find("b");
  const int at = *a.symbols.find("a");
  CHECK(a.initial == 0);
  CHECK(a.states[0].label == render(p(support::example_dynamic)));
  CHECK(a.states[1].label == "a");
  CHECK(a.states[2].label == "([ true* ] b)");
  CHECK(a.states[0].transitions == std::vector<Transition>{{Cube{{b}, {}}, LastCondition::Forbidden, {1, 2}}});
  CHECK(a.states[1].transitions == std::vector<Transition>{{Cube{{at}, {}}, LastCondition::Unconstrained, {}}});
  CHECK(a.states[2].transitions == std::vector<Transition>{{Cube{{b}, {}}, LastCondition::Required, {}},
                                                           {Cube{{b}, {}}, LastCondition::Forbidden, {2}}});
  CHECK(afw_stats(a) == Stats{3, 4, 2, 2});
}

TEST_CASE("running example runs") {
  const Afw a = compile_afw(p(support::example_dynamic));
  CHECK(afw_accepts(a, Trace{{"b"}, {"a", "b"}}));
  CHECK_FALSE(afw_accepts(a, Trace{{"b"}, {"a"}}));
  CHECK_FALSE(afw_accepts(a, Trace{{"b"}}));
  CHECK(afw_accepts(a, Trace{{"b", "zz"}, {"a", "b"}}));  // unknown atoms are ignored
}

TEST_CASE("tt and ff automata") {
  const Afw t = compile_afw(Formula::tt());
  CHECK(t.states.size() == 1);
  CHECK(t.states[0].transitions == std::vector<Transition>{{Cube{}, LastCondition::Unconstrained, {}}});
  CHECK(afw_stats(t) == Stats{1, 1, 0, 0});
  for (const auto& tr : support::traces_ab(3)) CHECK(afw_accepts(t, tr));
  const Afw f = compile_afw(Formula::ff());
  CHECK(f.states[0].transitions.empty());
  for (const auto& tr : support::traces_ab(3)) CHECK_FALSE(afw_accepts(f, tr));
}

TEST_CASE("atom a accepts exactly traces starting with a") {
  const Afw a = compile_afw(p("a"));
  for (const auto& t : support::traces_ab(3)) CHECK(afw_accepts(a, t) == t[0].contains("a"));
}

TEST_CASE("oracle equivalence on the random suite") {
  int mismatches = 0;
  for (const auto& f : support::random_suite(200)) {
    const Afw a = compile_afw(f);
    for (const auto& t : support::traces_ab(4))
      if (afw_accepts(a, t) != oracle::accepts(f, t)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("structural invariants") {
  for (const auto& f : support::random_suite(200)) {
    const Afw a = compile_afw(f);
    const Formula g = nnf(desugar(f));
    CHECK(a.states[static_cast<std::size_t>(a.initial)].label == render(g));
    std::set<std::string> labels;
    for (const auto& s : a.states) labels.insert(s.label);
    CHECK(labels.size() == a.states.size());
    CHECK(reachable_states(a).size() <= closure(g).size());
    for (const auto& s : a.states) {
      REQUIRE(s.formula);
      for (const auto& t : s.transitions) {
        for (int x : t.cond.pos) CHECK_FALSE(std::binary_search(t.cond.neg.begin(), t.cond.neg.end(), x));
        for (int succ : t.successors) CHECK((succ >= 0 && static_cast<std::size_t>(succ) < a.states.size()));
      }
    }
  }
}

TEST_CASE("horizon independence: one compilation serves every length") {
  const Formula f = p("G (~a | wX b) | F (a & LAST)");
  const Afw once = compile_afw(f);
  for (const auto& t : enumerate_traces({"a", "b"}, 5)) CHECK(afw_accepts(once, t) == afw_accepts(compile_afw(f), t));
}

TEST_CASE("cube helpers") {
  CHECK(intersect(Cube{{1}, {}}, Cube{{}, {1}}) == std::nullopt);
  CHECK(intersect(Cube{{1}, {}}, Cube{{2}, {3}}) == Cube{{1, 2}, {3}});
  CHECK(implies(Cube{{1, 2}, {}}, Cube{{1}, {}}));
  CHECK_FALSE(implies(Cube{{1}, {}}, Cube{{1, 2}, {}}));
  CHECK(disjoint(Cube{{1}, {}}, Cube{{}, {1}}));
  CHECK(satisfies({1, 3}, Cube{{1}, {2}}));
  CHECK_FALSE(satisfies({1, 2}, Cube{{1}, {2}}));
  CHECK(last_matches(LastCondition::Unconstrained, true));
  CHECK_FALSE(last_matches(LastCondition::Forbidden, true));
}
