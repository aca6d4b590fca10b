#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "esg/game.hpp"

namespace esg {

// A strategy: a total, polarity-preserving map of event structures from S
// into the game, receptive and innocent as checked below.
struct Strategy {
  PolarizedES s;       // the strategy's own event structure S
  PolarizedES game;    // the plain polarized game it plays on
  std::map<EventId, EventId> sigma;

  EventId image(const EventId& s_event) const {
    auto it = sigma.find(s_event);
    if (it == sigma.end())
      throw std::invalid_argument("sigma undefined for " + s_event);
    return it->second;
  }
};

// A strategy on a game with algebra: additionally instantiates every
// strategy event with a carrier element of the sort of its variable.
struct AStrategy {
  PolarizedES s;
  AGame game;
  std::map<EventId, EventId> sigma;
  std::map<EventId, ElementName> inst;

  EventId image(const EventId& s_event) const {
    auto it = sigma.find(s_event);
    if (it == sigma.end())
      throw std::invalid_argument("sigma undefined for " + s_event);
    return it->second;
  }

  ElementName value(const EventId& s_event) const {
    auto it = inst.find(s_event);
    if (it == inst.end())
      throw std::invalid_argument("inst undefined for " + s_event);
    return it->second;
  }
};

// Forgets the algebra, leaving the underlying plain strategy.
inline Strategy strategy_of(const AStrategy& ast) {
  return Strategy{ast.s, ast.game.pes, ast.sigma};
}

namespace detail {

inline ValidationReport check_strategy_map(const PolarizedES& s,
                                           const PolarizedES& game,
                                           const std::map<EventId, EventId>& sigma) {
  ValidationReport report = validate_polarized_es(s);
  if (!report.ok()) return report;
  for (const auto& e : s.es.events) {
    auto it = sigma.find(e);
    if (it == sigma.end()) {
      report.add("sigma not total: undefined on " + e);
      continue;
    }
    if (!game.es.events.count(it->second)) {
      report.add("sigma sends " + e + " to unknown game event " + it->second);
      continue;
    }
    if (s.polarity(e) != game.polarity(it->second))
      report.add("sigma does not preserve polarity at " + e);
  }
  if (!report.ok()) return report;
  EsMap f{s.es, game.es, sigma};
  report.merge(check_map(f));
  return report;
}

// Innocence: immediate dependencies introduced by the strategy must already
// be immediate in the game, except for new links from Opponent moves into
// Player moves (courtesy).
inline ValidationReport check_innocence(const PolarizedES& s,
                                        const PolarizedES& game,
                                        const std::map<EventId, EventId>& sigma) {
  ValidationReport report;
  EdgeSet s_imm = CausalOrder(s.es).immediate();
  EdgeSet g_imm = CausalOrder(game.es).immediate();
  for (const auto& [a, b] : s_imm) {
    bool constrained =
        s.polarity(b) == Pol::minus || s.polarity(a) == Pol::plus;
    if (!constrained) continue;
    if (!g_imm.count({sigma.at(a), sigma.at(b)}))
      report.add("innocence violated: " + a + " -> " + b +
                 " has no matching immediate dependency " + sigma.at(a) +
                 " -> " + sigma.at(b) + " in the game");
  }
  return report;
}

}  // namespace detail

// Receptivity and innocence for plain strategies. Receptivity: whenever the
// image configuration enables an Opponent move, the strategy has exactly one
// enabled preimage for it.
inline ValidationReport check_strategy(const Strategy& st) {
  ValidationReport report =
      detail::check_strategy_map(st.s, st.game, st.sigma);
  if (!report.ok()) return report;

  CausalOrder s_ord(st.s.es);
  CausalOrder g_ord(st.game.es);
  for (const auto& x : enumerate_configurations(st.s.es)) {
    EventSet gx = map_image(st.sigma, x);
    for (const auto& e : st.game.es.events) {
      if (st.game.polarity(e) != Pol::minus) continue;
      if (!is_enabled(st.game.es, g_ord, gx, e)) continue;
      int hits = 0;
      for (const auto& s : st.s.es.events) {
        if (st.sigma.at(s) != e) continue;
        if (is_enabled(st.s.es, s_ord, x, s)) ++hits;
      }
      if (hits != 1)
        report.add("not receptive at " + show_set(x) + ": game enables " + e +
                   "(-) with " + std::to_string(hits) +
                   " enabled preimages (need exactly 1)");
    }
  }
  report.merge(detail::check_innocence(st.s, st.game, st.sigma));
  return report;
}

// Receptivity and innocence for strategies with algebra. Receptivity here is
// per carrier element: every enabled Opponent move must have exactly one
// enabled preimage for each sort-matching value.
inline ValidationReport check_astrategy(const AStrategy& ast) {
  ValidationReport report =
      detail::check_strategy_map(ast.s, ast.game.pes, ast.sigma);
  if (!report.ok()) return report;

  for (const auto& s : ast.s.es.events) {
    auto it = ast.inst.find(s);
    if (it == ast.inst.end()) {
      report.add("inst not total: undefined on " + s);
      continue;
    }
    auto ce = ast.game.algebra.carrier.find(it->second);
    if (ce == ast.game.algebra.carrier.end()) {
      report.add("inst sends " + s + " to unknown element " + it->second);
      continue;
    }
    SortName expected = ast.game.sort_of_var(ast.game.var_of(ast.image(s)));
    if (ce->second != expected)
      report.add("sort mismatch at " + s + ": inst value " + it->second +
                 " has sort " + ce->second + ", variable needs " + expected);
  }
  if (!report.ok()) return report;

  CausalOrder s_ord(ast.s.es);
  CausalOrder g_ord(ast.game.pes.es);
  for (const auto& x : enumerate_configurations(ast.s.es)) {
    EventSet gx = map_image(ast.sigma, x);
    for (const auto& e : ast.game.pes.es.events) {
      if (ast.game.pes.polarity(e) != Pol::minus) continue;
      if (!is_enabled(ast.game.pes.es, g_ord, gx, e)) continue;
      SortName sort = ast.game.sort_of_var(ast.game.var_of(e));
      for (const auto& a : ast.game.algebra.elements_of_sort(sort)) {
        int hits = 0;
        for (const auto& s : ast.s.es.events) {
          if (ast.sigma.at(s) != e || ast.inst.at(s) != a) continue;
          if (is_enabled(ast.s.es, s_ord, x, s)) ++hits;
        }
        if (hits != 1)
          report.add("A-receptivity fails at " + show_set(x) + " for " + e +
                     "(-) with value " + a + ": " + std::to_string(hits) +
                     " enabled preimages (need exactly 1)");
      }
    }
  }
  report.merge(detail::check_innocence(ast.s, ast.game.pes, ast.sigma));
  return report;
}

// Configurations at which no Player move is enabled. Neutral events do not
// block maximality.
inline std::set<Configuration> plus_maximal_configurations(
    const PolarizedES& s) {
  CausalOrder ord(s.es);
  std::set<Configuration> out;
  for (const auto& x : enumerate_configurations(s.es)) {
    bool maximal = true;
    for (const auto& e : s.es.events) {
      if (s.polarity(e) != Pol::plus) continue;
      if (is_enabled(s.es, ord, x, e)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.insert(x);
  }
  return out;
}

// Determinism: any two enabled extensions, at least one of them a Player
// move, are jointly consistent.
inline bool is_deterministic(const PolarizedES& s) {
  CausalOrder ord(s.es);
  for (const auto& x : enumerate_configurations(s.es)) {
    for (const auto& e1 : s.es.events) {
      if (!is_enabled(s.es, ord, x, e1)) continue;
      for (const auto& e2 : s.es.events) {
        if (e2 <= e1) continue;
        if (!is_enabled(s.es, ord, x, e2)) continue;
        if (s.polarity(e1) != Pol::plus && s.polarity(e2) != Pol::plus)
          continue;
        EventSet joint = x;
        joint.insert(e1);
        joint.insert(e2);
        if (!is_consistent(s.es, joint)) return false;
      }
    }
  }
  return true;
}

// Restriction of a strategy on a parallel game to one side: keeps the
// events mapped there, restricts order and consistency, and drops the tag
// from the images.
inline AStrategy project_side(const AStrategy& ast, const AGame& side_game,
                              int side) {
  AStrategy out;
  out.game = side_game;
  CausalOrder ord(ast.s.es);
  EventSet kept;
  for (const auto& [s, e] : ast.sigma)
    if (tag_side(e) == side) kept.insert(s);
  for (const auto& s : kept) {
    out.s.es.events.insert(s);
    out.s.pol[s] = ast.s.polarity(s);
    out.sigma[s] = untag(ast.sigma.at(s));
    out.inst[s] = untag(ast.inst.at(s));
  }
  // order: the restriction of <=_S, re-reduced to covering form
  EventStructure tmp;
  tmp.events = kept;
  for (const auto& a : kept)
    for (const auto& b : kept)
      if (a != b && ord.leq(a, b)) tmp.covering.insert({a, b});
  out.s.es.events = kept;
  out.s.es.covering = CausalOrder(tmp).immediate();
  for (const auto& m : ast.s.es.min_inconsistent) {
    bool inside = true;
    for (const auto& e : m)
      if (!kept.count(e)) {
        inside = false;
        break;
      }
    if (inside) out.s.es.min_inconsistent.insert(m);
  }
  return out;
}

// The two defined parts of a strategy over a parallel game E ⅋ F.
inline std::pair<AStrategy, AStrategy> project_parallel(const AStrategy& ast,
                                                        const AGame& left,
                                                        const AGame& right) {
  return {project_side(ast, left, 1), project_side(ast, right, 2)};
}

// Given sigma(x) ⊆⁻ y (the gap is all Opponent moves), follows receptivity
// step by step to the unique x' ⊇ x with sigma(x') = y.
inline Configuration extend_along_negative(const Strategy& st,
                                           const Configuration& x,
                                           const Configuration& y) {
  CausalOrder s_ord(st.s.es);
  CausalOrder g_ord(st.game.es);
  if (!is_configuration(st.s.es, s_ord, x))
    throw std::invalid_argument("extend_along_negative: x not a configuration");
  if (!is_configuration(st.game.es, g_ord, y))
    throw std::invalid_argument("extend_along_negative: y not a configuration");
  EventSet gx = map_image(st.sigma, x);
  for (const auto& e : gx)
    if (!y.count(e))
      throw std::invalid_argument(
          "extend_along_negative: sigma(x) is not a subset of y");
  for (const auto& e : y)
    if (!gx.count(e) && st.game.polarity(e) != Pol::minus)
      throw std::invalid_argument(
          "extend_along_negative: gap event " + e + " is not negative");

  Configuration cur = x;
  EventSet cur_img = gx;
  while (cur_img != y) {
    bool progressed = false;
    for (const auto& e : y) {
      if (cur_img.count(e)) continue;
      if (!is_enabled(st.game.es, g_ord, cur_img, e)) continue;
      std::optional<EventId> pick;
      for (const auto& s : st.s.es.events) {
        if (st.sigma.at(s) != e) continue;
        if (!is_enabled(st.s.es, s_ord, cur, s)) continue;
        if (pick)
          throw std::invalid_argument(
              "extend_along_negative: receptivity gives two preimages of " + e);
        pick = s;
      }
      if (!pick)
        throw std::invalid_argument(
            "extend_along_negative: no enabled preimage of " + e +
            " (strategy is not receptive)");
      cur.insert(*pick);
      cur_img.insert(e);
      progressed = true;
      break;
    }
    if (!progressed)
      throw std::invalid_argument(
          "extend_along_negative: no enabled event closes the gap");
  }
  return cur;
}

// Given y ⊆ sigma(x), returns the unique sub-configuration of x with image
// y. Existence is guaranteed by innocence when the dropped events are all
// Player moves; when no such sub-configuration exists the call rejects.
inline Configuration restrict_along_positive(const Strategy& st,
                                             const Configuration& x,
                                             const Configuration& y) {
  CausalOrder s_ord(st.s.es);
  if (!is_configuration(st.s.es, s_ord, x))
    throw std::invalid_argument(
        "restrict_along_positive: x not a configuration");
  EventSet gx = map_image(st.sigma, x);
  for (const auto& e : y)
    if (!gx.count(e))
      throw std::invalid_argument(
          "restrict_along_positive: y is not a subset of sigma(x)");
  Configuration candidate;
  for (const auto& s : x)
    if (y.count(st.sigma.at(s))) candidate.insert(s);
  if (!s_ord.down_closed(candidate))
    throw std::invalid_argument(
        "restrict_along_positive: no sub-configuration of x has image y "
        "(innocence violated upstream)");
  return candidate;
}

}  // namespace esg
