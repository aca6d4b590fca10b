#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "esg/expansion.hpp"
#include "esg/game.hpp"
#include "esg/strategy.hpp"

namespace esg {

// A game with neutral events: a parallel composition N || E over a single
// algebra, where the N component is all neutral and E is an ordinary game
// with algebra. Stored in combined form with the N side marked, which is
// also how these games serialize.
struct NeutralGame {
  AGame combined;
  EventSet neutral_events;
};

// Builds the combined game from the two components, tagging N events with
// side 1 and E events with side 2. The algebra and variables are shared,
// not tagged: there is one algebra here, unlike parallel composition of
// games over different algebras.
inline NeutralGame make_neutral_game(const EventStructure& n_es,
                                     const std::map<EventId, VarName>& n_var,
                                     const VariableSet& n_vars,
                                     const AGame& e_part) {
  NeutralGame out;
  PolarizedES n_pes;
  n_pes.es = n_es;
  for (const auto& e : n_es.events) n_pes.pol[e] = Pol::neutral;
  out.combined.pes = par_pes(n_pes, e_part.pes);
  out.combined.algebra = e_part.algebra;
  for (const auto& [e, v] : n_var) out.combined.var[side_tag(1, e)] = v;
  for (const auto& [e, v] : e_part.var) out.combined.var[side_tag(2, e)] = v;
  out.combined.vars = e_part.vars;
  for (const auto& [v, s] : n_vars) out.combined.vars[v] = s;
  out.combined.winning = e_part.winning;
  for (const auto& e : n_es.events) out.neutral_events.insert(side_tag(1, e));
  return out;
}

// The restriction of the combined game to a subset of events, keeping ids.
inline AGame restrict_agame(const AGame& g, const EventSet& keep) {
  AGame out;
  out.algebra = g.algebra;
  out.vars = g.vars;
  out.winning = g.winning;
  for (const auto& e : keep) {
    out.pes.es.events.insert(e);
    out.pes.pol[e] = g.pes.polarity(e);
    out.var[e] = g.var_of(e);
  }
  for (const auto& [a, b] : g.pes.es.covering)
    if (keep.count(a) && keep.count(b)) out.pes.es.covering.insert({a, b});
  for (const auto& m : g.pes.es.min_inconsistent) {
    bool inside = true;
    for (const auto& e : m)
      if (!keep.count(e)) {
        inside = false;
        break;
      }
    if (inside) out.pes.es.min_inconsistent.insert(m);
  }
  return out;
}

inline AGame neutral_part_game(const NeutralGame& ng) {
  return restrict_agame(ng.combined, ng.neutral_events);
}

inline AGame signed_part_game(const NeutralGame& ng) {
  EventSet keep;
  for (const auto& e : ng.combined.pes.es.events)
    if (!ng.neutral_events.count(e)) keep.insert(e);
  AGame out = restrict_agame(ng.combined, keep);
  return out;
}

// Validity: the marked split really is a parallel composition (no causality
// or conflict across it), N is all neutral, E is a valid game, and
// no-overlap holds on the combined structure. Since every N event is
// concurrent with every E event, no-overlap forces the two parts onto
// disjoint variables.
inline ValidationReport validate_neutral_game(const NeutralGame& ng) {
  ValidationReport report;
  for (const auto& e : ng.neutral_events) {
    if (!ng.combined.pes.es.events.count(e))
      report.add("neutral marker names unknown event " + e);
    else if (ng.combined.pes.polarity(e) != Pol::neutral)
      report.add("marked neutral event " + e + " has polarity " +
                 pol_string(ng.combined.pes.polarity(e)));
  }
  for (const auto& e : ng.combined.pes.es.events)
    if (!ng.neutral_events.count(e) &&
        ng.combined.pes.polarity(e) == Pol::neutral)
      report.add("event " + e + " is neutral but not in the neutral part");
  for (const auto& [a, b] : ng.combined.pes.es.covering)
    if (ng.neutral_events.count(a) != ng.neutral_events.count(b))
      report.add("causality crosses the neutral split: (" + a + "," + b + ")");
  for (const auto& m : ng.combined.pes.es.min_inconsistent) {
    bool has_n = false, has_e = false;
    for (const auto& e : m)
      (ng.neutral_events.count(e) ? has_n : has_e) = true;
    if (has_n && has_e)
      report.add("conflict crosses the neutral split: " + show_set(m));
  }
  if (!report.ok()) return report;
  // The combined check covers race-freedom of the E part (neutral events are
  // exempt from race-freedom) and no-overlap across the whole structure,
  // which forces the two parts onto disjoint variables.
  report.merge(validate_agame(ng.combined));
  return report;
}

// The restriction of a strategy on N || E to its Player/Opponent events is
// a strategy on E.
inline AStrategy signed_restriction(const AStrategy& ast,
                                    const NeutralGame& ng) {
  AStrategy out;
  out.game = signed_part_game(ng);
  CausalOrder ord(ast.s.es);
  EventSet kept;
  for (const auto& [s, e] : ast.sigma)
    if (!ng.neutral_events.count(e)) kept.insert(s);
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
  for (const auto& s : kept) {
    out.s.pol[s] = ast.s.polarity(s);
    out.sigma[s] = ast.sigma.at(s);
    out.inst[s] = ast.inst.at(s);
  }
  return out;
}

// Strategy axioms on a neutral game: the usual checks (receptivity already
// quantifies over negative game events only, which excludes neutral ones;
// innocence clauses fire on neutral strategy events too), plus the remark
// that the signed restriction is a strategy on the E part.
inline ValidationReport check_neutral_astrategy(const AStrategy& ast,
                                                const NeutralGame& ng) {
  ValidationReport report = check_astrategy(ast);
  ValidationReport restriction = check_astrategy(signed_restriction(ast, ng));
  for (const auto& v : restriction.violations)
    report.add("signed restriction: " + v);
  return report;
}

// Expansion with neutral events: the parallel composition of the two
// component expansions, over the one shared algebra.
struct NeutralExpansion {
  NeutralGame source;
  PolarizedES pes;
  std::map<EventId, EventId> red;        // into the combined game's events
  std::map<EventId, ElementName> inst;
};

inline NeutralExpansion expand_neutral(const NeutralGame& ng) {
  NeutralExpansion out;
  out.source = ng;
  ExpandedGame nx = expand_game(neutral_part_game(ng));
  ExpandedGame ex = expand_game(signed_part_game(ng));
  out.pes = par_pes(nx.pes, ex.pes);
  for (const auto& [id, e] : nx.red) out.red[side_tag(1, id)] = e;
  for (const auto& [id, e] : ex.red) out.red[side_tag(2, id)] = e;
  for (const auto& [id, a] : nx.inst) out.inst[side_tag(1, id)] = a;
  for (const auto& [id, a] : ex.inst) out.inst[side_tag(2, id)] = a;
  return out;
}

// θ for neutral games: the value history of a strategy event lies entirely
// on its own side of the split, so it lands in that side's expansion.
inline Strategy theta_neutral(const AStrategy& ast, const NeutralExpansion& x) {
  Strategy out;
  out.s = ast.s;
  out.game = x.pes;
  for (const auto& s : ast.s.es.events) {
    EventId c = ast.image(s);
    int side = x.source.neutral_events.count(c) ? 1 : 2;
    out.sigma[s] = side_tag(side, expanded_id(c, local_env(ast, s)));
  }
  return out;
}

inline AStrategy reduc_neutral(const Strategy& st, const NeutralExpansion& x) {
  AStrategy out;
  out.s = st.s;
  out.game = x.source.combined;
  for (const auto& [s, e] : st.sigma) {
    auto r = x.red.find(e);
    if (r == x.red.end())
      throw std::invalid_argument("reduc_neutral: " + e +
                                  " is not an event of the expansion");
    out.sigma[s] = r->second;
    out.inst[s] = x.inst.at(e);
  }
  return out;
}

}  // namespace esg
