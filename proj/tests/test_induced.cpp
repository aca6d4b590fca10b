#include <catch2/catch_amalgamated.hpp>

#include "esg/esg.hpp"
#include "helpers.hpp"

using namespace esg;
using namespace fixtures;

namespace {

AStrategy loop_strategy() {
  // single event game over a looped edge algebra; the induced unary facts
  // are decided by the latest condition
  AGame g = single_neg_game(edge_algebra({"a", "b"}, {{"a", "a"}}));
  return red_strategy(g);
}

}  // namespace

TEST_CASE("induced relation on singleton tuples follows the interpretation",
          "[induced]") {
  AStrategy ast = loop_strategy();
  // events are e@[e=a] and e@[e=b]; R = {(a,a)}
  CHECK(induced_relation(ast, "R", {"e@[e=a]", "e@[e=a]"}));
  CHECK_FALSE(induced_relation(ast, "R", {"e@[e=b]", "e@[e=b]"}));
  // conflicting pair: inconsistent support
  CHECK_FALSE(induced_relation(ast, "R", {"e@[e=a]", "e@[e=b]"}));
}

TEST_CASE("induced relation requires the latest condition", "[induced]") {
  // chain game where both events carry the same variable: the earlier value
  // is superseded, so tuples naming the stale event fail
  AGame g;
  g.pes = pes(es({"e1", "e2"}, {{"e1", "e2"}}),
              {{"e1", Pol::minus}, {"e2", Pol::plus}});
  g.algebra = edge_algebra({"a"}, {{"a", "a"}});
  g.var = {{"e1", "al"}, {"e2", "al"}};
  g.vars = {{"al", "s"}};
  REQUIRE(validate_agame(g).ok());
  AStrategy ast = red_strategy(g);
  EventId stale = "e1@[e1=a]";
  EventId top = "e2@[e1=a,e2=a]";
  CHECK(induced_relation(ast, "R", {top, top}));
  // the pair {stale, top} downward-closes to a chain where stale is
  // superseded for its variable
  CHECK_FALSE(induced_relation(ast, "R", {stale, top}));
  // alone, the stale event is its own latest
  CHECK(induced_relation(ast, "R", {stale, stale}));
}

TEST_CASE("unknown relations are rejected", "[induced]") {
  AStrategy ast = loop_strategy();
  CHECK_THROWS_AS(induced_relation(ast, "nope", {}), std::invalid_argument);
}

TEST_CASE("empty signature agrees trivially", "[induced]") {
  AStrategy ast = two_value_single_event();
  auto report = check_induced_conjecture(ast);
  CHECK(report.entries.empty());
  CHECK(report.all_agree());
}

TEST_CASE("single-event strategies agree with the formula route", "[induced]") {
  AStrategy ast = loop_strategy();
  auto report = check_induced_conjecture(ast);
  CHECK_FALSE(report.entries.empty());
  CHECK(report.all_agree());
}

TEST_CASE("induced conjecture on randomized strategies", "[induced]") {
  Rng rng(71);
  int done = 0;
  while (done < 12) {
    Algebra alg = random_algebra(rng, 1, 2, 2);
    if (alg.relations.empty()) continue;
    AGame g = random_agame(rng, 3, alg);
    if (!validate_agame(g).ok()) continue;
    AStrategy ast = random_astrategy(rng, g);
    if (rng.chance(0.3)) ast = with_courtesy_link(rng, ast);
    if (!check_astrategy(ast).ok()) continue;
    if (ast.s.es.events.size() > 4) continue;
    ++done;
    auto report = check_induced_conjecture(ast);
    for (const auto& entry : report.entries) {
      INFO("relation " << entry.relation << " direct=" << entry.direct
                       << " via=" << entry.via_formula);
      CHECK(entry.agree());
    }
  }
}
