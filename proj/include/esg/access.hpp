#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "esg/copycat.hpp"
#include "esg/expansion.hpp"
#include "esg/semantics.hpp"
#include "esg/strategy.hpp"

namespace esg {

using LevelName = std::string;

// A preorder of access levels. The relation is stored explicitly; queries
// treat it reflexively.
struct LevelPreorder {
  std::set<LevelName> levels;
  std::set<std::pair<LevelName, LevelName>> leq;

  bool le(const LevelName& a, const LevelName& b) const {
    return a == b || leq.count({a, b}) > 0;
  }

  bool incomparable(const LevelName& a, const LevelName& b) const {
    return !le(a, b) && !le(b, a);
  }
};

inline ValidationReport validate_level_preorder(const LevelPreorder& p) {
  ValidationReport report;
  for (const auto& [a, b] : p.leq) {
    if (!p.levels.count(a) || !p.levels.count(b))
      report.add("leq pair (" + a + "," + b + ") mentions unknown level");
  }
  for (const auto& [a, b] : p.leq)
    for (const auto& [c, d] : p.leq)
      if (b == c && !p.le(a, d))
        report.add("leq is not transitive: " + a + " <= " + b + " <= " + d +
                   " but (" + a + "," + d + ") is missing");
  return report;
}

// An access-level assignment for a game's events, together with the level
// preorder it draws from.
struct LevelMap {
  LevelPreorder order;
  std::map<EventId, LevelName> assign;

  const LevelName& level(const EventId& e) const {
    auto it = assign.find(e);
    if (it == assign.end())
      throw std::invalid_argument("no access level for event " + e);
    return it->second;
  }
};

// A leveled game requires the level assignment to be monotone along
// causality: later events may only sit at equal or higher access.
inline ValidationReport validate_lambda_game(const PolarizedES& base,
                                             const LevelMap& lm) {
  ValidationReport report = validate_polarized_es(base);
  report.merge(validate_level_preorder(lm.order));
  for (const auto& e : base.es.events) {
    auto it = lm.assign.find(e);
    if (it == lm.assign.end())
      report.add("no access level for event " + e);
    else if (!lm.order.levels.count(it->second))
      report.add("event " + e + " assigned unknown level " + it->second);
  }
  if (!report.ok()) return report;
  CausalOrder ord(base.es);
  for (const auto& a : base.es.events)
    for (const auto& b : base.es.events)
      if (a != b && ord.leq(a, b) && !lm.order.le(lm.level(a), lm.level(b)))
        report.add("level assignment not monotone: " + a + " <= " + b +
                   " but " + lm.level(a) + " is not below " + lm.level(b));
  return report;
}

// A strategy respects the levels when its own causal order never makes a
// higher-access event depend on an incomparable or higher one: through the
// map, s' <= s must give l(σs') below l(σs).
inline ValidationReport check_lambda_strategy(const Strategy& st,
                                              const LevelMap& lm) {
  ValidationReport report;
  CausalOrder ord(st.s.es);
  for (const auto& a : st.s.es.events) {
    for (const auto& b : st.s.es.events) {
      if (a == b || !ord.leq(a, b)) continue;
      const LevelName& la = lm.level(st.image(a));
      const LevelName& lb = lm.level(st.image(b));
      if (!lm.order.le(la, lb))
        report.add("level flow violated: " + a + " <= " + b +
                   " maps to levels " + la + " and " + lb);
    }
  }
  return report;
}

// Levels for a parallel composition: both copies keep their original level.
inline LevelMap par_levels(const LevelMap& a, const LevelMap& b) {
  LevelMap out;
  out.order = a.order;
  out.order.levels.insert(b.order.levels.begin(), b.order.levels.end());
  out.order.leq.insert(b.order.leq.begin(), b.order.leq.end());
  for (const auto& [e, l] : a.assign) out.assign[side_tag(1, e)] = l;
  for (const auto& [e, l] : b.assign) out.assign[side_tag(2, e)] = l;
  return out;
}

// Copycat on a leveled game, with the arena's levels induced through the
// identity on events. The mirror of an event keeps its level, so the added
// copycat dependencies always respect levels; check_lambda_strategy is
// still run by callers rather than assumed.
inline std::pair<Strategy, LevelMap> lambda_copycat(const PolarizedES& a,
                                                    const LevelMap& lm) {
  Strategy cc = copycat(a);
  return {cc, par_levels(lm, lm)};
}

// Levels transport to the expansion along the projection.
inline LevelMap expansion_levels(const ExpandedGame& x, const LevelMap& lm) {
  LevelMap out;
  out.order = lm.order;
  for (const auto& [id, e] : x.red) out.assign[id] = lm.level(e);
  return out;
}

// A strategy with algebra respects levels when its θ-image on the leveled
// expansion does.
inline ValidationReport check_lambda_astrategy(const AStrategy& ast,
                                               const LevelMap& lm) {
  ExpandedGame x = expand_game(ast.game);
  return check_lambda_strategy(theta(ast, x), expansion_levels(x, lm));
}

// Derives event levels from levels carried by the variables.
inline LevelMap levels_from_variables(
    const AGame& g, const LevelPreorder& order,
    const std::map<VarName, LevelName>& var_levels) {
  LevelMap out;
  out.order = order;
  for (const auto& [e, v] : g.var) {
    auto it = var_levels.find(v);
    if (it == var_levels.end())
      throw std::invalid_argument("no level for variable " + v);
    out.assign[e] = it->second;
  }
  return out;
}

struct IndependenceReport {
  bool joint_consistency = true;          // clause (1)
  bool product_decomposition = true;      // clause (2)
  std::vector<std::string> notes;
};

// For level-independent enabled events of opposite polarity, every pair of
// preimage extensions must be jointly consistent, and the joint value pairs
// must form the full cartesian product of the single-extension values.
// Both are consequences of validity; a violation indicts the input.
inline IndependenceReport check_lambda_independence(const AStrategy& ast,
                                                    const LevelMap& lm,
                                                    const EventId& e,
                                                    const EventId& eprime,
                                                    const Configuration& x) {
  const AGame& g = ast.game;
  if (!lm.order.incomparable(lm.level(e), lm.level(eprime)))
    throw std::invalid_argument(
        "check_lambda_independence: levels are comparable");
  if (g.pes.polarity(e) != Pol::minus || g.pes.polarity(eprime) != Pol::plus)
    throw std::invalid_argument(
        "check_lambda_independence: need pol(e)=- and pol(e')=+");
  CausalOrder s_ord(ast.s.es);
  CausalOrder g_ord(g.pes.es);
  if (!is_configuration(ast.s.es, s_ord, x))
    throw std::invalid_argument(
        "check_lambda_independence: x is not a configuration");
  EventSet gx = map_image(ast.sigma, x);
  if (!is_enabled(g.pes.es, g_ord, gx, e) ||
      !is_enabled(g.pes.es, g_ord, gx, eprime))
    throw std::invalid_argument(
        "check_lambda_independence: image does not enable both events");

  VarName alpha = g.var_of(e);
  VarName alpha_prime = g.var_of(eprime);
  std::vector<EventId> exts_e, exts_ep;
  for (const auto& s : ast.s.es.events) {
    if (!is_enabled(ast.s.es, s_ord, x, s)) continue;
    if (ast.image(s) == e) exts_e.push_back(s);
    if (ast.image(s) == eprime) exts_ep.push_back(s);
  }

  IndependenceReport report;
  std::set<std::pair<ElementName, ElementName>> joint_pairs;
  for (const auto& s : exts_e) {
    for (const auto& sp : exts_ep) {
      Configuration joint = x;
      joint.insert(s);
      joint.insert(sp);
      if (!is_configuration(ast.s.es, s_ord, joint)) {
        report.joint_consistency = false;
        report.notes.push_back("extensions " + s + " and " + sp +
                               " are not jointly consistent");
        continue;
      }
      auto va = eval_term(ast, joint, Term::var(alpha));
      auto vb = eval_term(ast, joint, Term::var(alpha_prime));
      if (va && vb) joint_pairs.insert({*va, *vb});
    }
  }
  std::set<ElementName> singles_e, singles_ep;
  for (const auto& s : exts_e) {
    Configuration ext = x;
    ext.insert(s);
    if (auto v = eval_term(ast, ext, Term::var(alpha))) singles_e.insert(*v);
  }
  for (const auto& sp : exts_ep) {
    Configuration ext = x;
    ext.insert(sp);
    if (auto v = eval_term(ast, ext, Term::var(alpha_prime)))
      singles_ep.insert(*v);
  }
  std::set<std::pair<ElementName, ElementName>> product;
  for (const auto& a : singles_e)
    for (const auto& b : singles_ep) product.insert({a, b});
  if (joint_pairs != product) {
    report.product_decomposition = false;
    report.notes.push_back("joint value pairs differ from the product of "
                           "single-extension values");
  }
  return report;
}

}  // namespace esg
