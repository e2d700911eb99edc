#include <doctest.h>

#include <algorithm>
#include <random>

#include "sky/fixpoint.hpp"
#include "sky/parser.hpp"
#include "test_util.hpp"

using namespace sky;

namespace {

interpretation from_names(const ground_program& g, const std::vector<std::string>& names) {
  interpretation I(g.atoms.size());
  for (const std::string& n : names) {
    bool found = false;
    for (atom_id id = 0; id < g.atoms.size(); ++id)
      if (render(g.atoms[id]) == n) {
        I.insert(id);
        found = true;
      }
    REQUIRE(found);
  }
  return I;
}

}  // namespace

TEST_CASE("tp_step: a rule fires when its body holds") {
  const ground_program g = testutil::ground_of("q. p :- q.");
  const interpretation cur = from_names(g, {"q"});
  const interpretation next = tp_step(g, {"p"}, cur);
  CHECK(testutil::atom_names(g, next) == std::vector<std::string>{"p", "q"});
}

TEST_CASE("tp_step: nothing fires on the empty interpretation") {
  const ground_program g = testutil::ground_of("q. p :- q.");
  const interpretation empty(g.atoms.size());
  CHECK(tp_step(g, {"p"}, empty).count() == 0);
}

TEST_CASE("tp_step: one step of chain closure") {
  const ground_program g = testutil::ground_of(
      "edge(a,b). edge(b,c). path(X,Y) :- edge(X,Y). path(X,Z) :- edge(X,Y), path(Y,Z).");
  interpretation edb(g.atoms.size());
  for (atom_id id : g.fact_atoms) edb.insert(id);
  const interpretation next = tp_step(g, {"path"}, edb);
  CHECK(testutil::atom_names(g, next) ==
        std::vector<std::string>{"edge(a,b)", "edge(b,c)", "path(a,b)", "path(b,c)"});
}

TEST_CASE("tp_step is monotone and idempotent at the fixpoint") {
  const ground_program g = testutil::ground_of(
      "edge(a,b). edge(b,c). path(X,Y) :- edge(X,Y). path(X,Z) :- edge(X,Y), path(Y,Z).");
  interpretation small(g.atoms.size());
  for (atom_id id : g.fact_atoms) small.insert(id);
  interpretation big = tp_step(g, {"path"}, small);
  CHECK(tp_step(g, {"path"}, small).subset_of(tp_step(g, {"path"}, big)));
  const interpretation lm = least_model(g, {});
  CHECK(tp_step(g, {"path"}, lm) == lm);
}

TEST_CASE("least_model: two-step chain closure") {
  const ground_program g = testutil::ground_of(
      "edge(a,b). edge(b,c). path(X,Y) :- edge(X,Y). path(X,Z) :- edge(X,Y), path(Y,Z).");
  CHECK(testutil::atom_names(g, least_model(g, {})) ==
        std::vector<std::string>{"edge(a,b)", "edge(b,c)", "path(a,b)", "path(a,c)",
                                 "path(b,c)"});
}

TEST_CASE("least_model: guesses seed the derivation") {
  const ground_program g = testutil::ground_of(
      "node(a). color(r). #guess chosen(X,C) :- node(X), color(C). "
      "colored(X) :- chosen(X,C).");
  REQUIRE(g.decision_atoms.size() == 1);
  const interpretation m = least_model(g, {g.decision_atoms[0]});
  CHECK(testutil::atom_names(g, m) ==
        std::vector<std::string>{"chosen(a,r)", "color(r)", "colored(a)", "node(a)"});
  // and without the guess, nothing is colored
  const interpretation m0 = least_model(g, {});
  CHECK(testutil::atom_names(g, m0) == std::vector<std::string>{"color(r)", "node(a)"});
}

TEST_CASE("least_model: 5-node chain closes to k(k-1)/2 = 10 path atoms") {
  const ground_program g = testutil::ground_of(
      "edge(n1,n2). edge(n2,n3). edge(n3,n4). edge(n4,n5). "
      "path(X,Y) :- edge(X,Y). path(X,Z) :- edge(X,Y), path(Y,Z).");
  // independent oracle: boolean-matrix transitive closure over the chain
  const int k = 5;
  bool adj[5][5] = {};
  for (int i = 0; i + 1 < k; ++i) adj[i][i + 1] = true;
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (adj[i][m] && adj[m][j]) adj[i][j] = true;
  int expected = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) expected += adj[i][j];
  REQUIRE(expected == 10);

  const interpretation m = least_model(g, {});
  int paths = 0;
  for (atom_id id : m.to_sorted_ids())
    if (g.atoms[id].predicate == "path") ++paths;
  CHECK(paths == expected);
}

TEST_CASE("least_model handles stratified negation") {
  const ground_program g = testutil::ground_of(
      "node(a). node(b). node(c). edge(a,b). start(a). "
      "reach(X) :- start(X). reach(Y) :- reach(X), edge(X,Y). "
      "unreach(X) :- node(X), not reach(X).");
  const interpretation m = least_model(g, {});
  const auto names = testutil::atom_names(g, m);
  CHECK(std::count(names.begin(), names.end(), "unreach(c)") == 1);
  CHECK(std::count(names.begin(), names.end(), "unreach(a)") == 0);
  CHECK(std::count(names.begin(), names.end(), "reach(b)") == 1);
}

TEST_CASE("violates_constraints: first violated constraint in rule order") {
  SUBCASE(":- p. with p present") {
    const ground_program g = testutil::ground_of("#guess p. :- p.");
    const interpretation m = least_model(g, {g.decision_atoms[0]});
    const auto v = violates_constraints(g, m);
    REQUIRE(v.has_value());
    CHECK(g.rules[*v].kind == rule_kind::constraint);
  }
  SUBCASE(":- p, not q. is blocked when q holds") {
    const ground_program g = testutil::ground_of("#guess p. q :- p. :- p, not q.");
    const interpretation m = least_model(g, {g.decision_atoms[0]});
    CHECK_FALSE(violates_constraints(g, m).has_value());
  }
  SUBCASE("monochromatic edge trips the coloring constraint") {
    const ground_program g = testutil::ground_of(
        "node(a). node(b). edge(a,b). color(r). "
        "#guess chosen(X,C) :- node(X), color(C). "
        ":- edge(X,Y), chosen(X,C), chosen(Y,C).");
    const interpretation m = least_model(g, g.decision_atoms);  // both chosen(.,r)
    CHECK(violates_constraints(g, m).has_value());
  }
}

TEST_CASE("semi-naive equals naive on fixed programs") {
  const char* sources[] = {
      "p. q :- p.",
      "edge(a,b). edge(b,c). edge(c,d). path(X,Y) :- edge(X,Y). "
      "path(X,Z) :- edge(X,Y), path(Y,Z).",
      "n(a). n(b). e(a,b). r(X) :- n(X), not s(X). s(X) :- e(X,Y).",
      "b(1). b(2). c(X) :- b(X). d(X) :- c(X), not e(X). e(2) :- b(2).",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    const ground_program g = testutil::ground_of(src);
    CHECK(least_model(g, {}) == least_model_naive(g, {}));
  }
}

TEST_CASE("semi-naive equals naive on random stratified programs") {
  std::mt19937 rng(20260814);
  for (int i = 0; i < 40; ++i) {
    const std::string src = testutil::random_stratified_program(rng);
    CAPTURE(src);
    const ground_program g = testutil::ground_of(src);
    CHECK(least_model(g, {}) == least_model_naive(g, {}));
  }
}

TEST_CASE("least model is independent of statement order") {
  const std::vector<std::string> statements = {
      "n(a).", "n(b).", "e(a,b).", "r(X) :- n(X), not s(X).", "s(X) :- e(X,Y).",
      "t(X) :- r(X)."};
  std::vector<std::string> shuffled = statements;
  std::mt19937 rng(7);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::string text;
    for (const std::string& s : shuffled) text += s + "\n";
    const ground_program g = testutil::ground_of(text);
    const ground_program g0 = testutil::ground_of(
        "n(a). n(b). e(a,b). r(X) :- n(X), not s(X). s(X) :- e(X,Y). t(X) :- r(X).");
    CHECK(testutil::atom_names(g, least_model(g, {})) ==
          testutil::atom_names(g0, least_model(g0, {})));
  }
}

TEST_CASE("guess monotonicity on negation-free programs") {
  const ground_program g = testutil::ground_of(
      "item(a). item(b). item(c). #guess pick(X) :- item(X). "
      "some :- pick(X). pair(X,Y) :- pick(X), pick(Y).");
  REQUIRE(g.decision_atoms.size() == 3);
  const std::vector<atom_id> small = {g.decision_atoms[0]};
  const std::vector<atom_id> big = {g.decision_atoms[0], g.decision_atoms[2]};
  CHECK(least_model(g, small).subset_of(least_model(g, big)));
}

TEST_CASE("interpretation bitset basics") {
  interpretation I(130);
  CHECK(I.count() == 0);
  I.insert(0);
  I.insert(64);
  I.insert(129);
  CHECK(I.count() == 3);
  CHECK(I.contains(64));
  CHECK_FALSE(I.contains(1));
  CHECK(I.insert_new(5));
  CHECK_FALSE(I.insert_new(5));
  CHECK(I.to_sorted_ids() == std::vector<atom_id>{0, 5, 64, 129});
  interpretation J(130);
  J.insert(0);
  J.insert(5);
  CHECK(J.subset_of(I));
  CHECK_FALSE(I.subset_of(J));
}
