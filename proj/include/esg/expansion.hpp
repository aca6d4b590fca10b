#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "esg/game.hpp"
#include "esg/strategy.hpp"

namespace esg {

// A value history over the causal past of a game event: one carrier element
// per event of [e], sort-matching its variable.
using ValueEnv = std::map<EventId, ElementName>;

// Canonical name of an expanded event, e.g. "e@[d=a,e=b]". Entries are
// keyed by event id in lexicographic order, so equal histories render
// identically and files stay reproducible.
inline EventId expanded_id(const EventId& e, const ValueEnv& env) {
  std::string out = e + "@[";
  bool first = true;
  for (const auto& [k, v] : env) {
    if (!first) out += ",";
    out += k + "=" + v;
    first = false;
  }
  out += "]";
  return out;
}

// The expansion of a game with algebra: events are (e, ε) pairs carrying a
// full value history over [e]. The expansion is a plain polarized game; red
// projects back onto the source event and Inst reads the top value.
struct ExpandedGame {
  AGame source;
  PolarizedES pes;
  std::map<EventId, EventId> red;
  std::map<EventId, ElementName> inst;
  std::map<EventId, ValueEnv> env;
};

namespace detail {

inline bool envs_compatible(const ValueEnv& a, const ValueEnv& b) {
  // Iterate the smaller map.
  const ValueEnv& small = a.size() <= b.size() ? a : b;
  const ValueEnv& large = a.size() <= b.size() ? b : a;
  for (const auto& [k, v] : small) {
    auto it = large.find(k);
    if (it != large.end() && it->second != v) return false;
  }
  return true;
}

}  // namespace detail

inline ExpandedGame expand_game(const AGame& g) {
  ExpandedGame out;
  out.source = g;
  CausalOrder ord(g.pes.es);

  for (const auto& e : g.pes.es.events) {
    SortName s = g.sort_of_var(g.var_of(e));
    if (g.algebra.elements_of_sort(s).empty())
      throw std::invalid_argument(
          "expand_game: sort " + s + " of variable " + g.var_of(e) +
          " has an empty carrier; event " + e + " would vanish");
  }

  // All sortwise value histories over each causal past.
  for (const auto& e : g.pes.es.events) {
    std::vector<EventId> past(ord.down_set(e).begin(), ord.down_set(e).end());
    std::vector<ValueEnv> envs{ValueEnv{}};
    for (const auto& p : past) {
      SortName s = g.sort_of_var(g.var_of(p));
      std::vector<ValueEnv> next;
      for (const auto& partial : envs) {
        for (const auto& a : g.algebra.elements_of_sort(s)) {
          ValueEnv extended = partial;
          extended[p] = a;
          next.push_back(std::move(extended));
        }
      }
      envs = std::move(next);
    }
    for (const auto& env : envs) {
      EventId id = expanded_id(e, env);
      out.pes.es.events.insert(id);
      out.pes.pol[id] = g.pes.polarity(e);
      out.red[id] = e;
      out.inst[id] = env.at(e);
      out.env[id] = env;
    }
  }

  // (e',ε') is covered by (e,ε) exactly when e' -> e and ε' = ε ↾ [e'].
  EdgeSet imm = ord.immediate();
  for (const auto& [id, env] : out.env) {
    const EventId& e = out.red.at(id);
    for (const auto& [p, q] : imm) {
      if (q != e) continue;
      ValueEnv renv;
      for (const auto& w : ord.down_set(p)) renv[w] = env.at(w);
      out.pes.es.covering.insert({expanded_id(p, renv), id});
    }
  }

  // Consistency: histories must agree wherever their pasts meet, and the
  // projected event set must be consistent in the source. Minimal
  // inconsistent sets are the incompatible pairs plus the compatible lifts
  // of the source's minimal inconsistent sets.
  std::vector<EventId> ids(out.pes.es.events.begin(), out.pes.es.events.end());
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      if (!detail::envs_compatible(out.env.at(ids[i]), out.env.at(ids[j])))
        out.pes.es.min_inconsistent.insert(EventSet{ids[i], ids[j]});
    }
  }
  std::map<EventId, std::vector<EventId>> lifts;
  for (const auto& [id, e] : out.red) lifts[e].push_back(id);
  for (const auto& m : g.pes.es.min_inconsistent) {
    std::vector<EventId> members(m.begin(), m.end());
    std::vector<EventSet> partial{EventSet{}};
    for (const auto& e : members) {
      std::vector<EventSet> next;
      for (const auto& chosen : partial) {
        for (const auto& lift : lifts[e]) {
          bool ok = true;
          for (const auto& c : chosen) {
            if (!detail::envs_compatible(out.env.at(c), out.env.at(lift))) {
              ok = false;
              break;
            }
          }
          if (ok) {
            EventSet extended = chosen;
            extended.insert(lift);
            next.push_back(std::move(extended));
          }
        }
      }
      partial = std::move(next);
    }
    for (auto& lifted : partial)
      out.pes.es.min_inconsistent.insert(std::move(lifted));
  }
  return out;
}

// The strategy (expn(E), red, Inst) on the source game.
inline AStrategy red_strategy(const ExpandedGame& x) {
  return AStrategy{x.pes, x.source, x.red, x.inst};
}

inline AStrategy red_strategy(const AGame& g) {
  return red_strategy(expand_game(g));
}

// Local instantiation of a strategy event: the value history its own causal
// past assigns to the game past of its image.
inline ValueEnv local_env(const AStrategy& ast, const EventId& s) {
  CausalOrder s_ord(ast.s.es);
  CausalOrder g_ord(ast.game.pes.es);
  ValueEnv env;
  const EventSet& past = s_ord.down_set(s);
  for (const auto& e : g_ord.down_set(ast.image(s))) {
    bool found = false;
    for (const auto& below : past) {
      if (ast.image(below) == e) {
        env[e] = ast.value(below);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("local_env: " + e +
                                  " has no preimage below " + s +
                                  " (map not down-closed)");
  }
  return env;
}

// θ: transports a strategy with algebra to a plain strategy on the
// expansion, sending s to (σ(s), ε_s).
inline Strategy theta(const AStrategy& ast, const ExpandedGame& x) {
  Strategy out;
  out.s = ast.s;
  out.game = x.pes;
  for (const auto& s : ast.s.es.events)
    out.sigma[s] = expanded_id(ast.image(s), local_env(ast, s));
  return out;
}

inline Strategy theta(const AStrategy& ast) {
  return theta(ast, expand_game(ast.game));
}

// The inverse translation: composes a strategy on the expansion with red
// and Inst. theta and reduc are mutually inverse on the nose.
inline AStrategy reduc(const Strategy& st, const ExpandedGame& x) {
  AStrategy out;
  out.s = st.s;
  out.game = x.source;
  for (const auto& [s, e] : st.sigma) {
    auto r = x.red.find(e);
    if (r == x.red.end())
      throw std::invalid_argument("reduc: " + e +
                                  " is not an event of the expansion");
    out.sigma[s] = r->second;
    out.inst[s] = x.inst.at(e);
  }
  return out;
}

// The expansion distributes over parallel composition: expanding the
// parallel game is the same, up to renaming, as composing the expansions.
struct DistributedExpansion {
  ExpandedGame whole;   // expansion of g ⅋ h over the parallel algebra
  ExpandedGame left;    // expansion of g
  ExpandedGame right;   // expansion of h
  PolarizedES parallel;  // left.pes || right.pes
  std::map<EventId, EventId> to_parallel;
  std::map<EventId, EventId> from_parallel;
};

inline DistributedExpansion distribute_expansion(const AGame& g,
                                                 const AGame& h) {
  DistributedExpansion d;
  d.whole = expand_game(par_game(g, h));
  d.left = expand_game(g);
  d.right = expand_game(h);
  d.parallel = par_pes(d.left.pes, d.right.pes);
  for (const auto& [id, env] : d.whole.env) {
    EventId tagged_src = d.whole.red.at(id);
    int side = tag_side(tagged_src);
    ValueEnv local;
    for (const auto& [k, v] : env) local[untag(k)] = untag(v);
    EventId other = side_tag(side, expanded_id(untag(tagged_src), local));
    d.to_parallel[id] = other;
    d.from_parallel[other] = id;
  }
  return d;
}

}  // namespace esg
