#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "esg/algebra.hpp"
#include "esg/event_structure.hpp"
#include "esg/formula.hpp"
#include "esg/validation.hpp"

namespace esg {

// Player / Opponent / neutral. Plain games use only plus and minus;
// neutral marks system events.
enum class Pol { plus, minus, neutral };

inline std::string pol_string(Pol p) {
  switch (p) {
    case Pol::plus: return "+";
    case Pol::minus: return "-";
    case Pol::neutral: return "0";
  }
  return "?";
}

struct PolarizedES {
  EventStructure es;
  std::map<EventId, Pol> pol;

  bool operator==(const PolarizedES&) const = default;

  Pol polarity(const EventId& e) const {
    auto it = pol.find(e);
    if (it == pol.end())
      throw std::invalid_argument("polarity undefined for event " + e);
    return it->second;
  }
};

inline ValidationReport validate_polarized_es(const PolarizedES& p) {
  ValidationReport report = validate_event_structure(p.es);
  for (const auto& e : p.es.events)
    if (!p.pol.count(e)) report.add("polarity undefined for event " + e);
  for (const auto& [e, _] : p.pol)
    if (!p.es.events.count(e))
      report.add("polarity assigned to unknown event " + e);
  return report;
}

// Polarity reversal; neutral events stay neutral.
inline PolarizedES dual_pes(const PolarizedES& p) {
  PolarizedES out = p;
  for (auto& [e, pol] : out.pol) {
    if (pol == Pol::plus)
      pol = Pol::minus;
    else if (pol == Pol::minus)
      pol = Pol::plus;
  }
  return out;
}

// Simple parallel composition of polarized event structures: tagged
// disjoint union with componentwise causality and consistency.
inline PolarizedES par_pes(const PolarizedES& a, const PolarizedES& b) {
  PolarizedES out;
  auto add_side = [&out](const PolarizedES& src, int side) {
    for (const auto& e : src.es.events)
      out.es.events.insert(side_tag(side, e));
    for (const auto& [x, y] : src.es.covering)
      out.es.covering.insert({side_tag(side, x), side_tag(side, y)});
    for (const auto& m : src.es.min_inconsistent) {
      EventSet tagged;
      for (const auto& e : m) tagged.insert(side_tag(side, e));
      out.es.min_inconsistent.insert(std::move(tagged));
    }
    for (const auto& [e, p] : src.pol) out.pol[side_tag(side, e)] = p;
  };
  add_side(a, 1);
  add_side(b, 2);
  return out;
}

// Extracts one component of a parallel composition, stripping the tag.
inline PolarizedES par_side(const PolarizedES& p, int side) {
  PolarizedES out;
  for (const auto& e : p.es.events) {
    if (tag_side(e) != side) continue;
    out.es.events.insert(untag(e));
    out.pol[untag(e)] = p.polarity(e);
  }
  for (const auto& [x, y] : p.es.covering)
    if (tag_side(x) == side && tag_side(y) == side)
      out.es.covering.insert({untag(x), untag(y)});
  for (const auto& m : p.es.min_inconsistent) {
    bool mine = true;
    EventSet stripped;
    for (const auto& e : m) {
      if (tag_side(e) != side) {
        mine = false;
        break;
      }
      stripped.insert(untag(e));
    }
    if (mine) out.es.min_inconsistent.insert(std::move(stripped));
  }
  return out;
}

// A game over a relational many-sorted algebra: polarized events labelled
// with sorted variables, plus an optional winning condition. A missing
// winning condition stands for the empty conjunction (always true).
struct AGame {
  PolarizedES pes;
  Algebra algebra;
  std::map<EventId, VarName> var;
  VariableSet vars;
  FormulaPtr winning;  // may be null

  FormulaPtr winning_or_true() const { return winning ? winning : f_true(); }

  const VarName& var_of(const EventId& e) const {
    auto it = var.find(e);
    if (it == var.end())
      throw std::invalid_argument("var undefined for event " + e);
    return it->second;
  }

  SortName sort_of_var(const VarName& v) const {
    auto it = vars.find(v);
    if (it == vars.end())
      throw std::invalid_argument("variable " + v + " not declared");
    return it->second;
  }
};

// Race-freedom, no-overlap and labelling well-formedness, checked by full
// enumeration of configurations.
inline ValidationReport validate_agame(const AGame& g) {
  ValidationReport report = validate_polarized_es(g.pes);
  report.merge(validate_algebra(g.algebra));
  if (!report.ok()) return report;

  for (const auto& e : g.pes.es.events) {
    auto it = g.var.find(e);
    if (it == g.var.end()) {
      report.add("var undefined for event " + e);
      continue;
    }
    auto vs = g.vars.find(it->second);
    if (vs == g.vars.end())
      report.add("event " + e + " labelled with undeclared variable " +
                 it->second);
    else if (!g.algebra.sorts.count(vs->second))
      report.add("variable " + it->second + " has unknown sort " + vs->second);
  }
  for (const auto& [v, s] : g.vars)
    if (!g.algebra.sorts.count(s))
      report.add("variable " + v + " declared with unknown sort " + s);
  if (!report.ok()) return report;

  const EventStructure& es = g.pes.es;
  CausalOrder ord(es);

  // race-free: an enabled Player/Opponent pair is jointly consistent
  for (const auto& x : enumerate_configurations(es)) {
    for (const auto& e1 : es.events) {
      if (!is_enabled(es, ord, x, e1) || g.pes.polarity(e1) != Pol::plus)
        continue;
      for (const auto& e2 : es.events) {
        if (e2 == e1) continue;
        if (!is_enabled(es, ord, x, e2) || g.pes.polarity(e2) != Pol::minus)
          continue;
        EventSet joint = x;
        joint.insert(e1);
        joint.insert(e2);
        if (!is_consistent(es, joint))
          report.add("race-free violated at " + show_set(x) + ": " + e1 +
                     "(+) and " + e2 + "(-) are both enabled but inconsistent");
      }
    }
  }

  // no-overlap: events sharing a variable are never concurrent
  RelationTables rel = relations(es);
  for (const auto& e1 : es.events) {
    for (const auto& e2 : es.events) {
      if (e1 >= e2) continue;
      if (g.var.at(e1) != g.var.at(e2)) continue;
      if (rel.concurrent.count({e1, e2}))
        report.add("no-overlap violated: concurrent events " + e1 + " and " +
                   e2 + " share variable " + g.var.at(e1));
    }
  }

  // consequence of no-overlap, re-checked directly: within a configuration,
  // events with a common variable are totally ordered
  for (const auto& x : enumerate_configurations(es)) {
    for (const auto& e1 : x) {
      for (const auto& e2 : x) {
        if (e1 >= e2) continue;
        if (g.var.at(e1) != g.var.at(e2)) continue;
        if (!ord.comparable(e1, e2))
          report.add("variable " + g.var.at(e1) + " not totally ordered in " +
                     show_set(x));
      }
    }
  }

  if (g.winning) report.merge(check_formula(g.winning, g.algebra, g.vars));
  return report;
}

// Dual game: polarities reversed, winning condition negated.
inline AGame dual(const AGame& g) {
  AGame out = g;
  out.pes = dual_pes(g.pes);
  out.winning = f_not(g.winning_or_true());
  return out;
}

// Parallel composition of games over the parallel algebra. Everything is a
// tagged disjoint union; the winning condition is the disjunction of the
// transported sides.
inline AGame par_game(const AGame& g, const AGame& h) {
  AGame out;
  out.pes = par_pes(g.pes, h.pes);
  out.algebra = par_algebra(g.algebra, h.algebra);
  for (const auto& [e, v] : g.var)
    out.var[side_tag(1, e)] = side_tag(1, v);
  for (const auto& [e, v] : h.var)
    out.var[side_tag(2, e)] = side_tag(2, v);
  for (const auto& [v, s] : g.vars)
    out.vars[side_tag(1, v)] = side_tag(1, s);
  for (const auto& [v, s] : h.vars)
    out.vars[side_tag(2, v)] = side_tag(2, s);
  out.winning = f_or(tag_formula(g.winning_or_true(), 1),
                     tag_formula(h.winning_or_true(), 2));
  return out;
}

// The game E⊥ ⅋ F in which strategies from E to F live; its winning
// condition is the classical encoding of W_E ⇒ W_F.
inline AGame hom_game_arena(const AGame& e, const AGame& f) {
  AGame out = par_game(dual(e), f);
  out.winning = f_or(f_not(tag_formula(e.winning_or_true(), 1)),
                     tag_formula(f.winning_or_true(), 2));
  return out;
}

// latest(α, x): the ≤-greatest event of x labelled α, when it exists.
// A candidate set that is not totally ordered signals a corrupted game
// (no-overlap would have been violated) and is rejected.
inline std::optional<EventId> latest(const AGame& g, const VarName& alpha,
                                     const Configuration& x) {
  CausalOrder ord(g.pes.es);
  EventSet candidates;
  for (const auto& e : x)
    if (g.var_of(e) == alpha) candidates.insert(e);
  if (candidates.empty()) return std::nullopt;
  for (const auto& top : candidates) {
    bool dominates = true;
    for (const auto& other : candidates) {
      if (!ord.leq(other, top)) {
        dominates = false;
        break;
      }
    }
    if (dominates) return top;
  }
  throw std::invalid_argument(
      "latest: events labelled " + alpha + " in " + show_set(x) +
      " are not totally ordered (corrupted game)");
}

}  // namespace esg
