#pragma once

#include <string>
#include <vector>

#include "esg/composition.hpp"
#include "esg/generators.hpp"
#include "esg/model_games.hpp"
#include "esg/semantics.hpp"

namespace esg {

// Default suites for the conjecture harnesses, shared by the CLI and the
// acceptance runner.

// Winning-stability: one handcrafted single-synchronization pair plus
// randomized pairs of winning strategies found by filtering.
inline std::vector<StabilityInstance> default_stability_suite(
    uint64_t seed, int max_events, int random_instances = 8) {
  std::vector<StabilityInstance> suite;

  {
    StabilityInstance inst;
    inst.id = "single-sync";
    auto mk = [](const char* elem, const char* var) {
      AGame g;
      g.pes.es.events = {"e"};
      g.pes.pol = {{"e", Pol::plus}};
      g.algebra.sorts = {"s"};
      g.algebra.carrier = {{elem, "s"}};
      g.var = {{"e", var}};
      g.vars = {{var, "s"}};
      return g;
    };
    inst.e = mk("a", "al");
    inst.f = mk("b", "be");
    inst.g = mk("c", "ga");
    inst.ast1.game = par_game(dual(inst.e), inst.f);
    inst.ast1.s.es.events = {"r", "s"};
    inst.ast1.s.es.covering = {{"r", "s"}};
    inst.ast1.s.pol = {{"r", Pol::minus}, {"s", Pol::plus}};
    inst.ast1.sigma = {{"r", "1:e"}, {"s", "2:e"}};
    inst.ast1.inst = {{"r", "1:a"}, {"s", "2:b"}};
    inst.ast2.game = par_game(dual(inst.f), inst.g);
    inst.ast2.s = inst.ast1.s;
    inst.ast2.sigma = {{"r", "1:e"}, {"s", "2:e"}};
    inst.ast2.inst = {{"r", "1:b"}, {"s", "2:c"}};
    suite.push_back(std::move(inst));
  }

  Rng rng(seed);
  int found = 0, attempts = 0;
  while (found < random_instances && attempts < 6000) {
    ++attempts;
    AGame e = random_agame(rng, max_events);
    AGame f = random_agame(rng, max_events);
    AGame g = random_agame(rng, max_events);
    if (!validate_agame(e).ok() || !validate_agame(f).ok() ||
        !validate_agame(g).ok())
      continue;
    e.winning = random_formula(rng, e.algebra, e.vars, 2);
    f.winning = random_formula(rng, f.algebra, f.vars, 2);
    g.winning = random_formula(rng, g.algebra, g.vars, 2);
    StabilityInstance inst;
    inst.ast1 = random_astrategy(rng, par_game(dual(e), f));
    inst.ast2 = random_astrategy(rng, par_game(dual(f), g));
    if (!check_astrategy(inst.ast1).ok() || !check_astrategy(inst.ast2).ok())
      continue;
    FormulaPtr w1 =
        f_or(f_not(tag_formula(e.winning, 1)), tag_formula(f.winning, 2));
    FormulaPtr w2 =
        f_or(f_not(tag_formula(f.winning, 1)), tag_formula(g.winning, 2));
    if (!is_winning(inst.ast1, w1).winning) continue;
    if (!is_winning(inst.ast2, w2).winning) continue;
    inst.id = "random-" + std::to_string(found);
    inst.e = e;
    inst.f = f;
    inst.g = g;
    suite.push_back(std::move(inst));
    ++found;
  }
  return suite;
}

// Induced-algebra: randomized small strategies over relational algebras.
inline std::vector<AStrategy> default_induced_suite(uint64_t seed,
                                                    int max_events,
                                                    int instances = 10) {
  std::vector<AStrategy> suite;
  Rng rng(seed);
  int attempts = 0;
  while (static_cast<int>(suite.size()) < instances && attempts < 6000) {
    ++attempts;
    Algebra alg = random_algebra(rng, 1, 2, 2);
    if (alg.relations.empty()) continue;
    AGame g = random_agame(rng, max_events, alg);
    if (!validate_agame(g).ok()) continue;
    AStrategy ast = random_astrategy(rng, g);
    if (!check_astrategy(ast).ok()) continue;
    if (ast.s.es.events.size() > 4) continue;
    suite.push_back(std::move(ast));
  }
  return suite;
}

// The exhaustive cross-validation suite: all structures of size one or two
// over the empty signature and over one binary relation (every
// interpretation), both game kinds, pebbles and rounds up to two.
inline std::vector<GameConjectureInstance> small_games_suite() {
  std::vector<GameConjectureInstance> suite;
  std::vector<Algebra> plain, relational;
  for (int size = 1; size <= 2; ++size) {
    Algebra base;
    base.sorts = {"s"};
    for (int i = 0; i < size; ++i)
      base.carrier["x" + std::to_string(i)] = "s";
    plain.push_back(base);
    std::vector<std::vector<ElementName>> pairs;
    for (const auto& [a, _] : base.carrier)
      for (const auto& [b, __] : base.carrier) pairs.push_back({a, b});
    for (size_t mask = 0; mask < (size_t{1} << pairs.size()); ++mask) {
      Algebra alg = base;
      Algebra::Relation rel;
      rel.arity = {"s", "s"};
      for (size_t i = 0; i < pairs.size(); ++i)
        if (mask & (size_t{1} << i)) rel.tuples.insert(pairs[i]);
      alg.relations["R"] = rel;
      relational.push_back(alg);
    }
  }
  int id = 0;
  auto add_family = [&](const std::vector<Algebra>& family) {
    for (const auto& a : family)
      for (const auto& b : family)
        for (int k = 1; k <= 2; ++k)
          for (int n = 1; n <= 2; ++n)
            for (auto kind : {ModelGameKind::hom, ModelGameKind::ef})
              suite.push_back({"g" + std::to_string(id++), kind, a, b, k, n});
  };
  add_family(plain);
  add_family(relational);
  return suite;
}

}  // namespace esg
