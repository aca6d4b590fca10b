#include <catch2/catch_amalgamated.hpp>

#include "esg/esg.hpp"
#include "helpers.hpp"

using namespace esg;
using namespace fixtures;

TEST_CASE("identity on an all-positive game is a strategy", "[strategy]") {
  PolarizedES g = pes(es({"p", "q"}, {{"p", "q"}}),
                      {{"p", Pol::plus}, {"q", Pol::plus}});
  Strategy st{g, g, {{"p", "p"}, {"q", "q"}}};
  CHECK(check_strategy(st).ok());
}

TEST_CASE("empty strategy over a game with an initial negative event is not "
          "receptive",
          "[strategy]") {
  PolarizedES g = pes(es({"e"}), {{"e", Pol::minus}});
  Strategy st{PolarizedES{}, g, {}};
  auto report = check_strategy(st);
  REQUIRE_FALSE(report.ok());
  CHECK(report.to_string().find("receptive") != std::string::npos);
}

TEST_CASE("courtesy: adding minus-to-plus links is innocent, the reverse is "
          "not",
          "[strategy]") {
  PolarizedES g = pes(es({"m", "p"}), {{"m", Pol::minus}, {"p", Pol::plus}});

  Strategy ok;
  ok.game = g;
  ok.s = pes(es({"m", "p"}, {{"m", "p"}}), {{"m", Pol::minus}, {"p", Pol::plus}});
  ok.sigma = {{"m", "m"}, {"p", "p"}};
  CHECK(check_strategy(ok).ok());

  PolarizedES g2 = pes(es({"p", "m"}), {{"p", Pol::plus}, {"m", Pol::minus}});
  Strategy bad;
  bad.game = g2;
  bad.s = pes(es({"p", "m"}, {{"p", "m"}}), {{"p", Pol::plus}, {"m", Pol::minus}});
  bad.sigma = {{"p", "p"}, {"m", "m"}};
  auto report = check_strategy(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.to_string().find("innocence") != std::string::npos);
}

TEST_CASE("A-receptivity needs one preimage per value", "[strategy]") {
  AStrategy good = two_value_single_event();
  CHECK(check_astrategy(good).ok());

  AStrategy missing = good;
  missing.s = pes(es({"sa"}), {{"sa", Pol::minus}});
  missing.sigma = {{"sa", "e"}};
  missing.inst = {{"sa", "a"}};
  auto report = check_astrategy(missing);
  REQUIRE_FALSE(report.ok());
  CHECK(report.to_string().find("value b") != std::string::npos);
}

TEST_CASE("inst of the wrong sort is a sort mismatch", "[strategy]") {
  AGame g = single_neg_game(set_algebra({"a"}));
  g.algebra.sorts.insert("t");
  g.algebra.carrier["w"] = "t";
  AStrategy ast;
  ast.game = g;
  ast.s = pes(es({"s0"}), {{"s0", Pol::minus}});
  ast.sigma = {{"s0", "e"}};
  ast.inst = {{"s0", "w"}};
  auto report = check_astrategy(ast);
  REQUIRE_FALSE(report.ok());
  CHECK(report.to_string().find("sort mismatch") != std::string::npos);
}

TEST_CASE("plus-maximal configurations", "[strategy]") {
  PolarizedES all_neg = pes(es({"m1", "m2"}), {{"m1", Pol::minus}, {"m2", Pol::minus}});
  CHECK(plus_maximal_configurations(all_neg).size() == 4);

  PolarizedES single_plus = pes(es({"p"}), {{"p", Pol::plus}});
  CHECK(plus_maximal_configurations(single_plus) ==
        std::set<Configuration>{{"p"}});

  PolarizedES conflict = pes(es({"p1", "p2"}, {}, {{"p1", "p2"}}),
                             {{"p1", Pol::plus}, {"p2", Pol::plus}});
  CHECK(plus_maximal_configurations(conflict) ==
        std::set<Configuration>{{"p1"}, {"p2"}});
}

TEST_CASE("deterministic predicate", "[strategy]") {
  PolarizedES conflicting_positives =
      pes(es({"p1", "p2"}, {}, {{"p1", "p2"}}),
          {{"p1", Pol::plus}, {"p2", Pol::plus}});
  CHECK_FALSE(is_deterministic(conflicting_positives));

  PolarizedES conflicting_negatives =
      pes(es({"m1", "m2"}, {}, {{"m1", "m2"}}),
          {{"m1", Pol::minus}, {"m2", Pol::minus}});
  CHECK(is_deterministic(conflicting_negatives));

  PolarizedES free_pair = pes(es({"p", "m"}), {{"p", Pol::plus}, {"m", Pol::minus}});
  CHECK(is_deterministic(free_pair));
}

TEST_CASE("project_parallel splits a strategy over a parallel game",
          "[strategy]") {
  AGame left = single_neg_game(set_algebra({"a"}));
  AGame right = single_neg_game(set_algebra({"b"}), "be");
  right.pes.pol["e"] = Pol::plus;  // the reply side
  AGame arena = par_game(left, right);

  AStrategy ast;
  ast.game = arena;
  // one event per side, with a courtesy cross-link into the reply
  ast.s = pes(es({"sl", "sr"}, {{"sl", "sr"}}),
              {{"sl", Pol::minus}, {"sr", Pol::plus}});
  ast.sigma = {{"sl", "1:e"}, {"sr", "2:e"}};
  ast.inst = {{"sl", "1:a"}, {"sr", "2:b"}};
  REQUIRE(check_astrategy(ast).ok());

  auto [pl, pr] = project_parallel(ast, left, right);
  CHECK(pl.s.es.events == EventSet{"sl"});
  CHECK(pr.s.es.events == EventSet{"sr"});
  CHECK(pr.s.es.covering.empty());  // the cross-link is dropped
  CHECK(pl.sigma.at("sl") == "e");
  CHECK(pl.inst.at("sl") == "a");
  CHECK(check_astrategy(pl).ok());
  CHECK(check_astrategy(pr).ok());
}

TEST_CASE("projections of random strategies on parallel games are strategies",
          "[strategy]") {
  Rng rng(31);
  int done = 0;
  while (done < 15) {
    AGame g = random_agame(rng, 3);
    AGame h = random_agame(rng, 3);
    if (!validate_agame(g).ok() || !validate_agame(h).ok()) continue;
    AGame arena = par_game(g, h);
    AStrategy ast = random_astrategy(rng, arena);
    if (!check_astrategy(ast).ok()) continue;
    ++done;
    auto [pl, pr] = project_parallel(ast, g, h);
    CHECK(check_astrategy(pl).ok());
    CHECK(check_astrategy(pr).ok());
  }
}

TEST_CASE("extend_along_negative rejects value-ambiguous lifts", "[strategy]") {
  // The plain reading of receptivity fails on the underlying map of an
  // A-strategy with a multi-valued carrier: two enabled preimages of the
  // same negative event. The extension must refuse rather than guess.
  AStrategy ast = two_value_single_event();
  Strategy st = strategy_of(ast);
  CHECK(extend_along_negative(st, {}, {}) == Configuration{});
  CHECK_THROWS_AS(extend_along_negative(st, {}, {"e"}), std::invalid_argument);
}

TEST_CASE("extend_along_negative on a plain two-step game", "[strategy]") {
  PolarizedES g = pes(es({"m1", "m2"}, {{"m1", "m2"}}),
                      {{"m1", Pol::minus}, {"m2", Pol::minus}});
  Strategy st{g, g, {{"m1", "m1"}, {"m2", "m2"}}};
  REQUIRE(check_strategy(st).ok());
  CHECK(extend_along_negative(st, {}, {"m1", "m2"}) ==
        Configuration{"m1", "m2"});
  CHECK_THROWS_AS(extend_along_negative(st, {"m1", "m2"}, {"m1"}),
                  std::invalid_argument);
}

TEST_CASE("restrict_along_positive drops positive tops", "[strategy]") {
  PolarizedES g = pes(es({"m", "p1", "p2"}, {{"m", "p1"}, {"p1", "p2"}}),
                      {{"m", Pol::minus}, {"p1", Pol::plus}, {"p2", Pol::plus}});
  Strategy st{g, g, {{"m", "m"}, {"p1", "p1"}, {"p2", "p2"}}};
  REQUIRE(check_strategy(st).ok());
  CHECK(restrict_along_positive(st, {"m", "p1", "p2"}, {"m", "p1", "p2"}) ==
        Configuration{"m", "p1", "p2"});
  CHECK(restrict_along_positive(st, {"m", "p1", "p2"}, {"m", "p1"}) ==
        Configuration{"m", "p1"});
  CHECK(restrict_along_positive(st, {"m", "p1", "p2"}, {"m"}) ==
        Configuration{"m"});
}

TEST_CASE("extend then restrict with inverse arguments returns the original",
          "[strategy]") {
  Rng rng(33);
  int done = 0;
  while (done < 15) {
    AGame g = random_agame(rng, 4);
    if (!validate_agame(g).ok()) continue;
    Strategy st = random_plain_strategy(rng, g.pes);
    if (!check_strategy(st).ok()) continue;
    CausalOrder g_ord(st.game.es);
    for (const auto& x : enumerate_configurations(st.s.es)) {
      EventSet gx = map_image(st.sigma, x);
      // grow the image by enabled negative events only
      Configuration y = gx;
      for (const auto& e : st.game.es.events) {
        if (st.game.polarity(e) != Pol::minus) continue;
        if (is_enabled(st.game.es, g_ord, y, e)) y.insert(e);
      }
      if (!is_configuration(st.game.es, g_ord, y)) continue;
      Configuration grown = extend_along_negative(st, x, y);
      CHECK(map_image(st.sigma, grown) == y);
      CHECK(restrict_along_positive(st, grown, gx) == x);
      ++done;
      break;
    }
  }
}
