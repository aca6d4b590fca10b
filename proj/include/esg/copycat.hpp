#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "esg/expansion.hpp"
#include "esg/game.hpp"
#include "esg/strategy.hpp"

namespace esg {

// The event of the other copy: "1:e" <-> "2:e".
inline EventId mirror(const EventId& c) {
  int side = tag_side(c);
  if (side == 0)
    throw std::invalid_argument("mirror: " + c + " carries no side tag");
  return side_tag(side == 1 ? 2 : 1, untag(c));
}

namespace detail {

// Minimal inconsistent sets of an event structure whose consistency is
// "the down-closure (in the given order) is consistent in the base": for
// each minimal inconsistent set of the base, the inclusion-minimal sets of
// events whose down-closure covers it.
inline std::set<EventSet> covering_conflicts(
    const std::set<EventSet>& base_conflicts, const EventSet& events,
    const CausalOrder& ord) {
  std::set<EventSet> found;
  for (const auto& m : base_conflicts) {
    std::vector<EventId> members(m.begin(), m.end());
    std::vector<EventSet> partial{EventSet{}};
    for (const auto& target : members) {
      std::vector<EventSet> next;
      for (const auto& chosen : partial) {
        for (const auto& e : events) {
          if (!ord.leq(target, e)) continue;
          EventSet extended = chosen;
          extended.insert(e);
          next.push_back(std::move(extended));
        }
      }
      partial = std::move(next);
    }
    for (auto& s : partial) found.insert(std::move(s));
  }
  // keep only inclusion-minimal sets
  std::set<EventSet> minimal;
  for (const auto& s : found) {
    bool has_smaller = false;
    for (const auto& t : found) {
      if (t != s && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) minimal.insert(s);
  }
  return minimal;
}

}  // namespace detail

// Copycat on a polarized event structure A: the strategy on A⊥ || A whose
// event structure adds, for every Player move, a causal dependency on its
// mirror Opponent move. Finite sets are consistent when their down-closure
// is consistent in A⊥ || A. The map is the identity on events.
inline Strategy copycat(const PolarizedES& a) {
  PolarizedES game = par_pes(dual_pes(a), a);

  EventStructure cc;
  cc.events = game.es.events;
  cc.covering = game.es.covering;
  for (const auto& c : game.es.events)
    if (game.polarity(c) == Pol::plus) cc.covering.insert({mirror(c), c});

  CausalOrder ord(cc);
  if (ord.cyclic())
    throw std::logic_error("copycat: augmented causality has a cycle");
  cc.covering = ord.immediate();

  cc.min_inconsistent =
      detail::covering_conflicts(game.es.min_inconsistent, cc.events, ord);

  Strategy out;
  out.s.es = cc;
  out.s.pol = game.pol;
  out.game = game;
  for (const auto& c : cc.events) out.sigma[c] = c;
  return out;
}

// Copycat for a game with algebra: copycat on the expansion, composed with
// the projection back onto the game on both sides. An A-strategy in the
// game g⊥ ⅋ g.
inline AStrategy a_copycat(const AGame& g) {
  ExpandedGame x = expand_game(g);
  Strategy cc = copycat(x.pes);
  AStrategy out;
  out.s = cc.s;
  out.game = par_game(dual(g), g);
  for (const auto& c : cc.s.es.events) {
    int side = tag_side(c);
    EventId inner = untag(c);
    out.sigma[c] = side_tag(side, x.red.at(inner));
    out.inst[c] = side_tag(side, x.inst.at(inner));
  }
  return out;
}

}  // namespace esg
