#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "esg/composition.hpp"
#include "esg/expansion.hpp"
#include "esg/game.hpp"
#include "esg/strategy.hpp"

namespace esg {

// Deterministic source of randomness for suites; every randomized entry
// point takes an explicit seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  int below(int n) {
    return n <= 1 ? 0 : static_cast<int>(eng_() % static_cast<uint64_t>(n));
  }

  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p;
  }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(static_cast<int>(xs.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

// Random event structure: a sparse DAG over indexed events plus branching
// conflicts between events with disjoint up-closures, closed under
// inheritance. The disjointness requirement keeps every causal past
// conflict-free, which the validity axioms demand.
inline EventStructure random_event_structure(Rng& rng, int max_events,
                                             double edge_p = 0.3,
                                             double conflict_p = 0.25) {
  int n = 1 + rng.below(max_events);
  EventStructure out;
  std::vector<EventId> ids;
  for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  out.events = EventSet(ids.begin(), ids.end());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(edge_p)) out.covering.insert({ids[i], ids[j]});
  out = normalized(out);

  CausalOrder ord(out);
  auto up_set = [&](const EventId& e) {
    EventSet up;
    for (const auto& f : out.events)
      if (ord.leq(e, f)) up.insert(f);
    return up;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!rng.chance(conflict_p)) continue;
      EventSet ui = up_set(ids[i]);
      EventSet uj = up_set(ids[j]);
      bool disjoint = true;
      for (const auto& e : ui)
        if (uj.count(e)) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      for (const auto& a : ui)
        for (const auto& b : uj)
          out.min_inconsistent.insert(EventSet{a, b});
    }
  }
  return out;
}

inline Algebra random_algebra(Rng& rng, int max_sorts = 2,
                              int max_elems_per_sort = 2,
                              int max_relations = 2) {
  Algebra a;
  int sorts = 1 + rng.below(max_sorts);
  for (int i = 0; i < sorts; ++i) a.sorts.insert("s" + std::to_string(i));
  std::vector<SortName> sort_list(a.sorts.begin(), a.sorts.end());
  int counter = 0;
  for (const auto& s : sort_list) {
    int elems = 1 + rng.below(max_elems_per_sort);  // nonempty carriers
    for (int i = 0; i < elems; ++i)
      a.carrier["c" + std::to_string(counter++)] = s;
  }
  int rels = rng.below(max_relations + 1);
  for (int r = 0; r < rels; ++r) {
    Algebra::Relation rel;
    int arity = 1 + rng.below(2);
    for (int i = 0; i < arity; ++i) rel.arity.push_back(rng.pick(sort_list));
    std::vector<std::vector<ElementName>> pool{{}};
    for (const auto& s : rel.arity) {
      auto opts = a.elements_of_sort(s);
      std::vector<std::vector<ElementName>> next;
      for (const auto& partial : pool)
        for (const auto& e : opts) {
          auto t = partial;
          t.push_back(e);
          next.push_back(std::move(t));
        }
      pool = std::move(next);
    }
    for (const auto& t : pool)
      if (rng.chance(0.5)) rel.tuples.insert(t);
    a.relations["R" + std::to_string(r)] = std::move(rel);
  }
  return a;
}

// Random game over a random algebra. Conflicts are only seeded between
// events of the same polarity with disjoint futures, which keeps the game
// race-free by construction; variables are assigned so that sharing only
// happens along chains or across conflicts (no-overlap). Both properties
// are still validated by the callers that rely on them.
inline AGame random_agame(Rng& rng, int max_events, const Algebra& algebra) {
  AGame g;
  g.algebra = algebra;

  int n = 1 + rng.below(max_events);
  std::vector<EventId> ids;
  for (int i = 0; i < n; ++i) ids.push_back("g" + std::to_string(i));
  g.pes.es.events = EventSet(ids.begin(), ids.end());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(0.3)) g.pes.es.covering.insert({ids[i], ids[j]});
  g.pes.es = normalized(g.pes.es);
  for (const auto& e : ids) g.pes.pol[e] = rng.chance(0.5) ? Pol::plus : Pol::minus;

  CausalOrder ord(g.pes.es);
  auto up_set = [&](const EventId& e) {
    EventSet up;
    for (const auto& f : g.pes.es.events)
      if (ord.leq(e, f)) up.insert(f);
    return up;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!rng.chance(0.25)) continue;
      if (g.pes.polarity(ids[i]) != g.pes.polarity(ids[j])) continue;
      EventSet ui = up_set(ids[i]);
      EventSet uj = up_set(ids[j]);
      bool disjoint = true;
      for (const auto& e : ui)
        if (uj.count(e)) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      for (const auto& a : ui)
        for (const auto& b : uj)
          g.pes.es.min_inconsistent.insert(EventSet{a, b});
    }
  }

  // variable assignment honouring no-overlap: reuse a variable only when
  // every prior carrier of it is comparable or in conflict
  std::vector<SortName> sort_list(algebra.sorts.begin(), algebra.sorts.end());
  int var_counter = 0;
  for (const auto& e : ids) {
    std::vector<VarName> reusable;
    for (const auto& [v, s] : g.vars) {
      bool ok = true;
      for (const auto& [e2, v2] : g.var) {
        if (v2 != v) continue;
        bool comparable = ord.comparable(e, e2);
        bool conflicting = !is_consistent(g.pes.es, EventSet{e, e2});
        if (!comparable && !conflicting) {
          ok = false;
          break;
        }
      }
      if (ok) reusable.push_back(v);
    }
    if (!reusable.empty() && rng.chance(0.4)) {
      g.var[e] = rng.pick(reusable);
    } else {
      VarName v = "x" + std::to_string(var_counter++);
      g.vars[v] = rng.pick(sort_list);
      g.var[e] = v;
    }
  }
  return g;
}

inline AGame random_agame(Rng& rng, int max_events) {
  Algebra a = random_algebra(rng);
  return random_agame(rng, max_events, a);
}

// Removes the up-closure of a choice of Player events from the expansion's
// strategy. Dropping Player futures preserves receptivity and innocence, so
// the result is again a strategy; courtesy augmentation below can then add
// Opponent-before-Player dependencies.
inline AStrategy random_astrategy(Rng& rng, const AGame& g) {
  ExpandedGame x = expand_game(g);
  AStrategy base = red_strategy(x);
  CausalOrder ord(base.s.es);

  EventSet removed;
  for (const auto& e : base.s.es.events) {
    if (base.s.polarity(e) != Pol::plus) continue;
    if (!rng.chance(0.3)) continue;
    for (const auto& f : base.s.es.events)
      if (ord.leq(e, f)) removed.insert(f);
  }
  AStrategy out;
  out.game = g;
  for (const auto& e : base.s.es.events) {
    if (removed.count(e)) continue;
    out.s.es.events.insert(e);
    out.s.pol[e] = base.s.polarity(e);
    out.sigma[e] = base.sigma.at(e);
    out.inst[e] = base.inst.at(e);
  }
  for (const auto& [a, b] : base.s.es.covering)
    if (!removed.count(a) && !removed.count(b))
      out.s.es.covering.insert({a, b});
  for (const auto& m : base.s.es.min_inconsistent) {
    bool kept = true;
    for (const auto& e : m)
      if (removed.count(e)) {
        kept = false;
        break;
      }
    if (kept) out.s.es.min_inconsistent.insert(m);
  }
  return out;
}

// Tries to add one Opponent-to-Player causal link between concurrent
// strategy events, closing conflicts under inheritance through the new
// order. Validity is re-checked by the caller; additions that break
// receptivity are discarded there.
inline AStrategy with_courtesy_link(Rng& rng, const AStrategy& ast) {
  CausalOrder ord(ast.s.es);
  std::vector<std::pair<EventId, EventId>> candidates;
  for (const auto& a : ast.s.es.events) {
    if (ast.s.polarity(a) != Pol::minus) continue;
    for (const auto& b : ast.s.es.events) {
      if (ast.s.polarity(b) != Pol::plus) continue;
      if (ord.comparable(a, b)) continue;
      if (!is_consistent(ast.s.es, EventSet{a, b})) continue;
      candidates.push_back({a, b});
    }
  }
  if (candidates.empty()) return ast;
  auto [a, b] = candidates[rng.below(static_cast<int>(candidates.size()))];
  AStrategy out = ast;
  out.s.es.covering.insert({a, b});
  out.s.es = normalized(out.s.es);
  // inherit conflicts along the enlarged order
  CausalOrder ord2(out.s.es);
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<EventSet> extra;
    for (const auto& m : out.s.es.min_inconsistent) {
      if (m.size() != 2) continue;
      auto it = m.begin();
      EventId u = *it++;
      EventId v = *it;
      for (const auto& w : out.s.es.events) {
        if (ord2.leq(u, w) && w != v && !ord2.comparable(w, v))
          extra.insert(EventSet{w, v});
        if (ord2.leq(v, w) && w != u && !ord2.comparable(w, u))
          extra.insert(EventSet{w, u});
      }
    }
    for (const auto& m : extra)
      if (!out.s.es.min_inconsistent.count(m)) {
        out.s.es.min_inconsistent.insert(m);
        changed = true;
      }
  }
  return out;
}

// Random plain strategy on a plain game: prune Player up-sets from the
// identity strategy (the identity on a game is receptive and innocent).
inline Strategy random_plain_strategy(Rng& rng, const PolarizedES& game) {
  CausalOrder ord(game.es);
  EventSet removed;
  for (const auto& e : game.es.events) {
    if (game.polarity(e) != Pol::plus) continue;
    if (!rng.chance(0.3)) continue;
    for (const auto& f : game.es.events)
      if (ord.leq(e, f)) removed.insert(f);
  }
  Strategy out;
  out.game = game;
  for (const auto& e : game.es.events) {
    if (removed.count(e)) continue;
    out.s.es.events.insert(e);
    out.s.pol[e] = game.polarity(e);
    out.sigma[e] = e;
  }
  for (const auto& [a, b] : game.es.covering)
    if (!removed.count(a) && !removed.count(b))
      out.s.es.covering.insert({a, b});
  for (const auto& m : game.es.min_inconsistent) {
    bool kept = true;
    for (const auto& e : m)
      if (removed.count(e)) {
        kept = false;
        break;
      }
    if (kept) out.s.es.min_inconsistent.insert(m);
  }
  return out;
}

// Random formula over a game's vocabulary, bounded depth.
inline FormulaPtr random_formula(Rng& rng, const Algebra& algebra,
                                 const VariableSet& vars, int depth) {
  std::vector<VarName> var_list;
  for (const auto& [v, _] : vars) var_list.push_back(v);
  std::vector<ElementName> elem_list;
  for (const auto& [e, _] : algebra.carrier) elem_list.push_back(e);
  std::vector<RelName> rel_list;
  for (const auto& [r, _] : algebra.relations) rel_list.push_back(r);

  auto random_term = [&]() {
    if (!var_list.empty() && (elem_list.empty() || rng.chance(0.6)))
      return Term::var(rng.pick(var_list));
    return Term::elem(rng.pick(elem_list));
  };
  auto atom = [&]() -> FormulaPtr {
    int what = rng.below(3);
    if (what == 0 && !rel_list.empty()) {
      const RelName& r = rng.pick(rel_list);
      const auto& arity = algebra.relations.at(r).arity;
      std::vector<Term> args;
      for (const auto& s : arity) {
        // choose a sort-correct term
        std::vector<Term> opts;
        for (const auto& v : var_list)
          if (vars.at(v) == s) opts.push_back(Term::var(v));
        for (const auto& e : elem_list)
          if (algebra.carrier.at(e) == s) opts.push_back(Term::elem(e));
        if (opts.empty()) return f_true();
        args.push_back(opts[rng.below(static_cast<int>(opts.size()))]);
      }
      return f_rel(r, args);
    }
    if (what == 1) return f_eq(random_term(), random_term());
    return f_def(random_term());
  };
  if (depth <= 0) return atom();
  switch (rng.below(7)) {
    case 0: return atom();
    case 1:
      return f_and(random_formula(rng, algebra, vars, depth - 1),
                   random_formula(rng, algebra, vars, depth - 1));
    case 2:
      return f_or(random_formula(rng, algebra, vars, depth - 1),
                  random_formula(rng, algebra, vars, depth - 1));
    case 3: return f_not(random_formula(rng, algebra, vars, depth - 1));
    case 4: {
      if (var_list.empty()) return atom();
      return f_forall(rng.pick(var_list),
                      random_formula(rng, algebra, vars, depth - 1));
    }
    case 5: {
      if (var_list.empty()) return atom();
      return f_exists(rng.pick(var_list),
                      random_formula(rng, algebra, vars, depth - 1));
    }
    default: {
      std::vector<FormulaPtr> items;
      int count = rng.below(3);
      for (int i = 0; i < count; ++i)
        items.push_back(random_formula(rng, algebra, vars, depth - 1));
      return rng.chance(0.5) ? f_big_and(items) : f_big_or(items);
    }
  }
}

}  // namespace esg
