#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
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

// --- interaction of two strategies over a shared middle game ---------------
//
// st1 plays on A⊥ || B, st2 on B⊥ || C. An interaction state is a pair of
// configurations whose B-images match; it advances by visible single steps
// on either side and by synchronized pairs on B. States built this way are
// secured: the causal orders of both strategies, glued through the
// matching, stay acyclic.

namespace detail {

// One occurrence inside an interaction state: a visible left event, a
// visible right event, or a synchronized pair.
struct InteractionNode {
  EventId s;  // empty when absent
  EventId t;

  auto operator<=>(const InteractionNode&) const = default;

  std::string to_string() const {
    if (t.empty()) return "l:" + s;
    if (s.empty()) return "r:" + t;
    return "x:" + s + "&" + t;
  }
};

using InteractionState = std::pair<Configuration, Configuration>;

inline std::vector<InteractionNode> state_nodes(const InteractionState& st,
                                                const Strategy& left,
                                                const Strategy& right) {
  std::vector<InteractionNode> nodes;
  std::map<std::string, EventId> right_by_middle;
  for (const auto& t : st.second) {
    EventId img = right.image(t);
    if (tag_side(img) == 1) right_by_middle[untag(img)] = t;
  }
  for (const auto& s : st.first) {
    EventId img = left.image(s);
    if (tag_side(img) == 1) {
      nodes.push_back({s, ""});
    } else {
      auto it = right_by_middle.find(untag(img));
      if (it == right_by_middle.end())
        throw std::logic_error("interaction state has an unmatched middle event");
      nodes.push_back({s, it->second});
    }
  }
  for (const auto& t : st.second) {
    if (tag_side(right.image(t)) == 2) nodes.push_back({"", t});
  }
  return nodes;
}

// The securing order on a state's nodes: the transitive closure of the two
// strategies' causal orders transported through the synchronizations.
inline std::vector<std::vector<bool>> securing_order(
    const std::vector<InteractionNode>& nodes, const CausalOrder& left_ord,
    const CausalOrder& right_ord) {
  size_t n = nodes.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        le[i][j] = true;
        continue;
      }
      bool s_rel = !nodes[i].s.empty() && !nodes[j].s.empty() &&
                   left_ord.leq(nodes[i].s, nodes[j].s);
      bool t_rel = !nodes[i].t.empty() && !nodes[j].t.empty() &&
                   right_ord.leq(nodes[i].t, nodes[j].t);
      le[i][j] = s_rel || t_rel;
    }
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  return le;
}

inline bool securing_is_partial_order(const std::vector<std::vector<bool>>& le) {
  for (size_t i = 0; i < le.size(); ++i)
    for (size_t j = 0; j < le.size(); ++j)
      if (i != j && le[i][j] && le[j][i]) return false;
  return true;
}

inline std::set<InteractionState> reachable_states(const Strategy& st1,
                                                   const Strategy& st2) {
  CausalOrder s_ord(st1.s.es);
  CausalOrder t_ord(st2.s.es);
  std::set<InteractionState> seen;
  std::deque<InteractionState> frontier;
  InteractionState init{{}, {}};
  seen.insert(init);
  frontier.push_back(init);
  while (!frontier.empty()) {
    auto [x, y] = frontier.front();
    frontier.pop_front();
    auto push = [&](Configuration nx, Configuration ny) {
      InteractionState st{std::move(nx), std::move(ny)};
      if (seen.insert(st).second) frontier.push_back(st);
    };
    for (const auto& s : st1.s.es.events) {
      if (!is_enabled(st1.s.es, s_ord, x, s)) continue;
      EventId img = st1.image(s);
      Configuration nx = x;
      nx.insert(s);
      if (tag_side(img) == 1) {
        push(nx, y);
      } else {
        // middle move: must synchronize with an enabled partner
        for (const auto& t : st2.s.es.events) {
          if (st2.image(t) != side_tag(1, untag(img))) continue;
          if (!is_enabled(st2.s.es, t_ord, y, t)) continue;
          Configuration ny = y;
          ny.insert(t);
          push(nx, ny);
        }
      }
    }
    for (const auto& t : st2.s.es.events) {
      if (!is_enabled(st2.s.es, t_ord, y, t)) continue;
      if (tag_side(st2.image(t)) != 2) continue;
      Configuration ny = y;
      ny.insert(t);
      push(x, ny);
    }
  }
  return seen;
}

inline bool state_subset(const InteractionState& a, const InteractionState& b) {
  return std::includes(b.first.begin(), b.first.end(), a.first.begin(),
                       a.first.end()) &&
         std::includes(b.second.begin(), b.second.end(), a.second.begin(),
                       a.second.end());
}

// Minimal hitting sets of a family of sets (Berge's incremental algorithm);
// used to recover the minimal inconsistent sets from the maximal consistent
// ones after hiding.
inline std::set<EventSet> minimal_hitting_sets(
    const std::vector<EventSet>& family) {
  for (const auto& c : family)
    if (c.empty()) return {};
  std::set<EventSet> hitting{EventSet{}};
  for (const auto& c : family) {
    std::set<EventSet> next;
    for (const auto& h : hitting) {
      bool hits = false;
      for (const auto& v : h)
        if (c.count(v)) {
          hits = true;
          break;
        }
      if (hits) {
        next.insert(h);
      } else {
        for (const auto& v : c) {
          EventSet grown = h;
          grown.insert(v);
          next.insert(std::move(grown));
        }
      }
    }
    // prune non-minimal candidates
    std::set<EventSet> pruned;
    for (const auto& h : next) {
      bool has_smaller = false;
      for (const auto& other : next) {
        if (other != h &&
            std::includes(h.begin(), h.end(), other.begin(), other.end())) {
          has_smaller = true;
          break;
        }
      }
      if (!has_smaller) pruned.insert(h);
    }
    hitting = std::move(pruned);
  }
  return hitting;
}

}  // namespace detail

// Interaction followed by hiding. The interaction's events are the prime
// secured states (unique top occurrence); hiding keeps those whose top is
// visible in A⊥ or C. Causality is inclusion of primes; a visible set is
// consistent when some reachable state contains all its members.
inline Strategy compose_classic(const Strategy& st1, const Strategy& st2) {
  PolarizedES middle1 = par_side(st1.game, 2);
  PolarizedES middle2 = par_side(st2.game, 1);
  if (middle1.es != middle2.es || middle1.pol != dual_pes(middle2).pol)
    throw std::invalid_argument(
        "compose_classic: middle games do not match up to duality");

  CausalOrder s_ord(st1.s.es);
  CausalOrder t_ord(st2.s.es);
  auto states = detail::reachable_states(st1, st2);

  struct Prime {
    detail::InteractionState state;
    detail::InteractionNode top;
    std::string name;
  };
  std::vector<Prime> visible;
  for (const auto& st : states) {
    auto nodes = detail::state_nodes(st, st1, st2);
    if (nodes.empty()) continue;
    auto le = detail::securing_order(nodes, s_ord, t_ord);
    std::optional<size_t> top;
    bool unique = true;
    for (size_t i = 0; i < nodes.size() && unique; ++i) {
      bool maximal = true;
      for (size_t j = 0; j < nodes.size(); ++j) {
        if (i != j && le[i][j]) {
          maximal = false;
          break;
        }
      }
      if (maximal) {
        if (top)
          unique = false;
        else
          top = i;
      }
    }
    if (!unique || !top) continue;  // not a prime
    const auto& n = nodes[*top];
    bool is_visible = (!n.s.empty() && n.t.empty()) ||
                      (n.s.empty() && !n.t.empty());
    if (!is_visible) continue;  // synchronized top: hidden
    std::string name;
    std::set<std::string> parts;
    for (const auto& node : nodes) parts.insert(node.to_string());
    for (const auto& p : parts) {
      if (!name.empty()) name += "|";
      name += p;
    }
    visible.push_back({st, n, name});
  }

  Strategy out;
  out.game = par_pes(par_side(st1.game, 1), par_side(st2.game, 2));
  for (const auto& p : visible) {
    out.s.es.events.insert(p.name);
    EventId img;
    Pol pol;
    if (!p.top.s.empty()) {
      img = st1.image(p.top.s);  // lies on side 1 (A⊥) of st1's game
      pol = st1.s.polarity(p.top.s);
    } else {
      img = st2.image(p.top.t);  // lies on side 2 (C) of st2's game
      pol = st2.s.polarity(p.top.t);
    }
    out.sigma[p.name] = img;
    out.s.pol[p.name] = pol;
  }

  // causality: inclusion of primes, reduced to covering edges
  for (const auto& a : visible) {
    for (const auto& b : visible) {
      if (a.name == b.name) continue;
      if (!detail::state_subset(a.state, b.state)) continue;
      bool immediate = true;
      for (const auto& c : visible) {
        if (c.name == a.name || c.name == b.name) continue;
        if (detail::state_subset(a.state, c.state) &&
            detail::state_subset(c.state, b.state) &&
            !(c.state == a.state) && !(c.state == b.state)) {
          immediate = false;
          break;
        }
      }
      if (immediate && !(a.state == b.state))
        out.s.es.covering.insert({a.name, b.name});
    }
  }

  // consistency from the maximal reachable states
  std::vector<detail::InteractionState> maximal;
  for (const auto& st : states) {
    bool is_max = true;
    for (const auto& other : states) {
      if (other != st && detail::state_subset(st, other)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(st);
  }
  std::vector<EventSet> complements;
  for (const auto& z : maximal) {
    EventSet outside;
    for (const auto& p : visible)
      if (!detail::state_subset(p.state, z)) outside.insert(p.name);
    complements.push_back(std::move(outside));
  }
  out.s.es.min_inconsistent = detail::minimal_hitting_sets(complements);
  return out;
}

// --- strategy isomorphism ---------------------------------------------------

namespace detail {

inline bool iso_search(
    const std::vector<EventId>& left,
    const std::map<EventId, std::vector<EventId>>& candidates, size_t idx,
    std::map<EventId, EventId>& assign, std::set<EventId>& used,
    const EventStructure& es1, const EventStructure& es2) {
  if (idx == left.size()) {
    EdgeSet mapped;
    for (const auto& [a, b] : es1.covering)
      mapped.insert({assign.at(a), assign.at(b)});
    if (mapped != es2.covering) return false;
    std::set<EventSet> mapped_conflicts;
    for (const auto& m : es1.min_inconsistent) {
      EventSet image;
      for (const auto& e : m) image.insert(assign.at(e));
      mapped_conflicts.insert(std::move(image));
    }
    return mapped_conflicts == es2.min_inconsistent;
  }
  const EventId& e = left[idx];
  for (const auto& target : candidates.at(e)) {
    if (used.count(target)) continue;
    assign[e] = target;
    used.insert(target);
    if (iso_search(left, candidates, idx + 1, assign, used, es1, es2))
      return true;
    assign.erase(e);
    used.erase(target);
  }
  return false;
}

}  // namespace detail

// Isomorphism of strategies over the same game: an event bijection commuting
// with the maps into the game (and with inst when given), preserving
// covering and consistency both ways. Exhaustive search with candidate
// pruning by image and polarity; fine at the scales tested here.
inline bool isomorphic_strategies(
    const PolarizedES& s1, const std::map<EventId, EventId>& sigma1,
    const PolarizedES& s2, const std::map<EventId, EventId>& sigma2,
    const std::map<EventId, ElementName>* inst1 = nullptr,
    const std::map<EventId, ElementName>* inst2 = nullptr) {
  if (s1.es.events.size() != s2.es.events.size()) return false;
  std::vector<EventId> left(s1.es.events.begin(), s1.es.events.end());
  std::map<EventId, std::vector<EventId>> candidates;
  for (const auto& e : left) {
    std::vector<EventId> targets;
    for (const auto& f : s2.es.events) {
      if (sigma1.at(e) != sigma2.at(f)) continue;
      if (s1.polarity(e) != s2.polarity(f)) continue;
      if (inst1 && inst1->at(e) != inst2->at(f)) continue;
      targets.push_back(f);
    }
    if (targets.empty()) return false;
    candidates[e] = std::move(targets);
  }
  std::map<EventId, EventId> assign;
  std::set<EventId> used;
  return detail::iso_search(left, candidates, 0, assign, used, s1.es, s2.es);
}

inline bool isomorphic(const Strategy& a, const Strategy& b) {
  return isomorphic_strategies(a.s, a.sigma, b.s, b.sigma);
}

inline bool isomorphic(const AStrategy& a, const AStrategy& b) {
  return isomorphic_strategies(a.s, a.sigma, b.s, b.sigma, &a.inst, &b.inst);
}

// --- composition with algebras ----------------------------------------------

inline Algebra un_par_algebra(const Algebra& a, int side) {
  Algebra out;
  for (const auto& s : a.sorts)
    if (tag_side(s) == side) out.sorts.insert(untag(s));
  for (const auto& [name, sort] : a.carrier)
    if (tag_side(name) == side) out.carrier[untag(name)] = untag(sort);
  for (const auto& [rname, rel] : a.relations) {
    if (tag_side(rname) != side) continue;
    Algebra::Relation r;
    for (const auto& s : rel.arity) r.arity.push_back(untag(s));
    for (const auto& tuple : rel.tuples) {
      std::vector<ElementName> t;
      for (const auto& e : tuple) t.push_back(untag(e));
      r.tuples.insert(std::move(t));
    }
    out.relations[untag(rname)] = std::move(r);
  }
  return out;
}

// Recovers one component of a parallel game, dropping the winning condition
// (component winning conditions are not reconstructible in general and the
// uses below never need them).
inline AGame un_par_game(const AGame& g, int side) {
  AGame out;
  out.pes = par_side(g.pes, side);
  out.algebra = un_par_algebra(g.algebra, side);
  for (const auto& [e, v] : g.var)
    if (tag_side(e) == side) out.var[untag(e)] = untag(v);
  for (const auto& [v, s] : g.vars)
    if (tag_side(v) == side) out.vars[untag(v)] = untag(s);
  out.winning = nullptr;
  return out;
}

namespace detail {

inline std::map<EventId, EventId> rename_through(
    const std::map<EventId, EventId>& sigma,
    const std::map<EventId, EventId>& renaming) {
  std::map<EventId, EventId> out;
  for (const auto& [s, e] : sigma) out[s] = renaming.at(e);
  return out;
}

}  // namespace detail

// Synchronized composition of strategies with algebras: transport both
// through theta onto the expansions, distribute the expansions over the
// parallel compositions, compose the plain strategies, and translate the
// result back with reduc. The result plays on (E⊥ ⅋ G) with the winning
// condition left to the caller.
inline AStrategy a_compose(const AStrategy& ast1, const AStrategy& ast2) {
  AGame e_dual = un_par_game(ast1.game, 1);  // already-dualized E component
  AGame f = un_par_game(ast1.game, 2);
  AGame f_dual = un_par_game(ast2.game, 1);
  AGame g = un_par_game(ast2.game, 2);

  if (f.pes.es != f_dual.pes.es || dual_pes(f.pes).pol != f_dual.pes.pol ||
      f.var != f_dual.var || f.vars != f_dual.vars ||
      f.algebra != f_dual.algebra)
    throw std::invalid_argument(
        "a_compose: middle games do not match up to duality");

  auto dist1 = distribute_expansion(e_dual, f);
  auto dist2 = distribute_expansion(f_dual, g);
  auto dist3 = distribute_expansion(e_dual, g);

  Strategy p1{ast1.s, dist1.parallel,
              detail::rename_through(theta(ast1, dist1.whole).sigma,
                                     dist1.to_parallel)};
  Strategy p2{ast2.s, dist2.parallel,
              detail::rename_through(theta(ast2, dist2.whole).sigma,
                                     dist2.to_parallel)};

  Strategy composed = compose_classic(p1, p2);
  Strategy back{composed.s, dist3.whole.pes,
                detail::rename_through(composed.sigma, dist3.from_parallel)};
  return reduc(back, dist3.whole);
}

// --- winning stability harness ----------------------------------------------

struct StabilityInstance {
  std::string id;
  AGame e, f, g;        // component games with their winning conditions
  AStrategy ast1;       // plays on E⊥ ⅋ F
  AStrategy ast2;       // plays on F⊥ ⅋ G
};

struct StabilityVerdict {
  std::string id;
  std::string verdict;  // preserved | violated | precondition_failed
  std::optional<Configuration> witness;
  std::vector<std::string> trace;
  std::optional<AStrategy> composed;
};

// Checks, per instance, whether the composite of two winning strategies is
// winning for the transported condition W_E ⇒ W_G. Violations are reported
// with a witness, never suppressed: stability is a hypothesis under test,
// not an assumption.
inline std::vector<StabilityVerdict> check_winning_stability(
    const std::vector<StabilityInstance>& instances) {
  std::vector<StabilityVerdict> out;
  for (const auto& inst : instances) {
    StabilityVerdict v;
    v.id = inst.id;
    FormulaPtr w1 = f_or(f_not(tag_formula(inst.e.winning_or_true(), 1)),
                         tag_formula(inst.f.winning_or_true(), 2));
    FormulaPtr w2 = f_or(f_not(tag_formula(inst.f.winning_or_true(), 1)),
                         tag_formula(inst.g.winning_or_true(), 2));
    if (!is_winning(inst.ast1, w1).winning ||
        !is_winning(inst.ast2, w2).winning) {
      v.verdict = "precondition_failed";
      out.push_back(std::move(v));
      continue;
    }
    AStrategy composed = a_compose(inst.ast1, inst.ast2);
    FormulaPtr w = f_or(f_not(tag_formula(inst.e.winning_or_true(), 1)),
                        tag_formula(inst.g.winning_or_true(), 2));
    auto verdict = is_winning(composed, w);
    if (verdict.winning) {
      v.verdict = "preserved";
    } else {
      v.verdict = "violated";
      v.witness = verdict.witness;
      v.trace = eval_trace(composed, *verdict.witness, w);
      v.composed = composed;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace esg
