#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "esg/expansion.hpp"
#include "esg/game.hpp"
#include "esg/semantics.hpp"
#include "esg/strategy.hpp"

namespace esg {

enum class ModelGameKind { hom, ef };

inline std::string model_game_kind_name(ModelGameKind k) {
  return k == ModelGameKind::hom ? "hom" : "ef";
}

namespace detail {

struct PlayNode {
  EventId id;            // full dotted move sequence
  EventId parent;        // empty at the roots
  VarName var;           // variable of the last move
  int depth = 0;         // 1-based length
};

// Shared tree builder. A move is a pebble variable; Opponent moves open a
// round, the paired Player reply closes it with the same index on the
// other structure. For the back-and-forth variant Opponent also picks the
// direction.
inline std::vector<PlayNode> play_tree(ModelGameKind kind, int k, int n) {
  std::vector<PlayNode> nodes;
  struct Frame {
    EventId id;
    int rounds_left;
  };
  std::vector<Frame> stack{{"", n}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.rounds_left == 0) continue;
    int depth_base = 0;
    for (char c : f.id)
      if (c == '.') ++depth_base;
    if (!f.id.empty()) depth_base += 1;
    for (int i = 1; i <= k; ++i) {
      std::string ai = "a" + std::to_string(i);
      std::string bi = "b" + std::to_string(i);
      std::vector<std::pair<std::string, std::string>> rounds;
      rounds.push_back({ai, bi});
      if (kind == ModelGameKind::ef) rounds.push_back({bi, ai});
      for (const auto& [ask, reply] : rounds) {
        EventId odd = f.id.empty() ? ask : f.id + "." + ask;
        EventId even = odd + "." + reply;
        nodes.push_back({odd, f.id, ask, depth_base + 1});
        nodes.push_back({even, odd, reply, depth_base + 2});
        stack.push_back({even, f.rounds_left - 1});
      }
    }
  }
  return nodes;
}

inline bool is_play_prefix(const EventId& shorter, const EventId& longer) {
  return shorter.size() < longer.size() &&
         longer.compare(0, shorter.size(), shorter) == 0 &&
         longer[shorter.size()] == '.';
}

inline void require_single_sorted(const Algebra& a, const Algebra& b) {
  if (a.sorts.size() != 1 || b.sorts.size() != 1)
    throw std::invalid_argument("model games need single-sorted structures");
  if (a.relations.size() != b.relations.size())
    throw std::invalid_argument("model games need a common signature");
  auto ita = a.relations.begin();
  auto itb = b.relations.begin();
  for (; ita != a.relations.end(); ++ita, ++itb) {
    if (ita->first != itb->first ||
        ita->second.arity.size() != itb->second.arity.size())
      throw std::invalid_argument("model games need a common signature");
  }
}

inline std::vector<std::vector<int>> index_vectors(int k, size_t len) {
  std::vector<std::vector<int>> out{{}};
  for (size_t j = 0; j < len; ++j) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out) {
      for (int i = 1; i <= k; ++i) {
        auto extended = v;
        extended.push_back(i);
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

// The pebble-game winning condition, truncated to indices 1..k: equalities
// between same-index pebbles must be preserved (or mirrored, for the
// back-and-forth variant), and likewise every relation of the signature
// under every index vector.
inline FormulaPtr model_game_winning(ModelGameKind kind, const Algebra& a,
                                     int k) {
  std::vector<FormulaPtr> items;
  auto pair_of = [](int i) {
    return std::pair<Term, Term>{Term::var("a" + std::to_string(i)),
                                 Term::var("b" + std::to_string(i))};
  };
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      auto [ai, bi] = pair_of(i);
      auto [aj, bj] = pair_of(j);
      FormulaPtr left = f_eq(ai, aj);
      FormulaPtr right = f_eq(bi, bj);
      items.push_back(kind == ModelGameKind::hom ? f_implies(left, right)
                                                 : f_iff(left, right));
    }
  }
  for (const auto& [rname, rel] : a.relations) {
    for (const auto& v : detail::index_vectors(k, rel.arity.size())) {
      std::vector<Term> args_a, args_b;
      for (int i : v) {
        args_a.push_back(Term::var("a" + std::to_string(i)));
        args_b.push_back(Term::var("b" + std::to_string(i)));
      }
      FormulaPtr left = f_rel(side_tag(1, rname), args_a);
      FormulaPtr right = f_rel(side_tag(2, rname), args_b);
      items.push_back(kind == ModelGameKind::hom ? f_implies(left, right)
                                                 : f_iff(left, right));
    }
  }
  return f_big_and(items);
}

// The k-pebbled, n-round homomorphism or back-and-forth game between two
// single-sorted structures over a common signature, as a game over the
// parallel algebra. Events are alternating move sequences, causality is the
// prefix order, conflict is branching, and polarity alternates with depth.
inline AGame gen_model_game(ModelGameKind kind, const Algebra& a,
                            const Algebra& b, int k, int n) {
  detail::require_single_sorted(a, b);
  if (k < 1 || n < 0)
    throw std::invalid_argument("gen_model_game: need k >= 1 and n >= 0");

  AGame g;
  g.algebra = par_algebra(a, b);
  SortName sort_a = side_tag(1, *a.sorts.begin());
  SortName sort_b = side_tag(2, *b.sorts.begin());
  for (int i = 1; i <= k; ++i) {
    g.vars["a" + std::to_string(i)] = sort_a;
    g.vars["b" + std::to_string(i)] = sort_b;
  }

  auto nodes = detail::play_tree(kind, k, n);
  for (const auto& node : nodes) {
    g.pes.es.events.insert(node.id);
    g.pes.pol[node.id] = node.depth % 2 == 1 ? Pol::minus : Pol::plus;
    g.var[node.id] = node.var;
    if (!node.parent.empty())
      g.pes.es.covering.insert({node.parent, node.id});
  }
  // conflict by branching: any two prefix-incomparable plays clash
  for (const auto& u : g.pes.es.events) {
    for (const auto& v : g.pes.es.events) {
      if (u >= v) continue;
      if (detail::is_play_prefix(u, v) || detail::is_play_prefix(v, u))
        continue;
      g.pes.es.min_inconsistent.insert(EventSet{u, v});
    }
  }
  g.winning = model_game_winning(kind, a, k);
  return g;
}

inline AGame gen_hom_game(const Algebra& a, const Algebra& b, int k, int n) {
  return gen_model_game(ModelGameKind::hom, a, b, k, n);
}

inline AGame gen_ef_game(const Algebra& a, const Algebra& b, int k, int n) {
  return gen_model_game(ModelGameKind::ef, a, b, k, n);
}

// --- independent oracle -------------------------------------------------
//
// Straight recursive min-max over pebble positions, deliberately ignorant
// of event structures: the cross-check for the game-semantics route.

namespace detail {

using Position = std::vector<std::optional<std::pair<ElementName, ElementName>>>;

inline bool position_ok(ModelGameKind kind, const Algebra& a, const Algebra& b,
                        const Position& pos) {
  size_t k = pos.size();
  for (size_t i = 0; i < k; ++i) {
    if (!pos[i]) continue;
    for (size_t j = 0; j < k; ++j) {
      if (!pos[j]) continue;
      bool ea = pos[i]->first == pos[j]->first;
      bool eb = pos[i]->second == pos[j]->second;
      if (kind == ModelGameKind::hom ? (ea && !eb) : (ea != eb)) return false;
    }
  }
  for (const auto& [rname, rel] : a.relations) {
    const auto& rel_b = b.relations.at(rname);
    for (const auto& v : index_vectors(static_cast<int>(k), rel.arity.size())) {
      bool placed = true;
      std::vector<ElementName> ta, tb;
      for (int i : v) {
        if (!pos[i - 1]) {
          placed = false;
          break;
        }
        ta.push_back(pos[i - 1]->first);
        tb.push_back(pos[i - 1]->second);
      }
      if (!placed) continue;
      bool ra = rel.tuples.count(ta) > 0;
      bool rb = rel_b.tuples.count(tb) > 0;
      if (kind == ModelGameKind::hom ? (ra && !rb) : (ra != rb)) return false;
    }
  }
  return true;
}

inline bool duplicator_wins(ModelGameKind kind, const Algebra& a,
                            const Algebra& b, Position& pos, int rounds) {
  if (!position_ok(kind, a, b, pos)) return false;
  if (rounds == 0) return true;
  size_t k = pos.size();
  for (size_t i = 0; i < k; ++i) {
    // Spoiler pebbles structure A (always available; the only option in the
    // homomorphism game)
    for (const auto& [ea, _sa] : a.carrier) {
      bool answered = false;
      for (const auto& [eb, _sb] : b.carrier) {
        auto saved = pos[i];
        pos[i] = {{ea, eb}};
        bool win = duplicator_wins(kind, a, b, pos, rounds - 1);
        pos[i] = saved;
        if (win) {
          answered = true;
          break;
        }
      }
      if (!answered) return false;
    }
    if (kind == ModelGameKind::ef) {
      for (const auto& [eb, _sb] : b.carrier) {
        bool answered = false;
        for (const auto& [ea, _sa] : a.carrier) {
          auto saved = pos[i];
          pos[i] = {{ea, eb}};
          bool win = duplicator_wins(kind, a, b, pos, rounds - 1);
          pos[i] = saved;
          if (win) {
            answered = true;
            break;
          }
        }
        if (!answered) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Does Duplicator win the k-pebble, n-round game between A and B?
inline bool oracle_decide(ModelGameKind kind, const Algebra& a,
                          const Algebra& b, int k, int n) {
  detail::require_single_sorted(a, b);
  detail::Position pos(static_cast<size_t>(k));
  return detail::duplicator_wins(kind, a, b, pos, n);
}

// --- bounded search for deterministic winning strategies ------------------

struct SearchResult {
  enum class Status { found, exhausted, bound_exceeded };
  Status status = Status::exhausted;
  std::optional<AStrategy> strategy;
  long nodes_visited = 0;

  std::string status_name() const {
    switch (status) {
      case Status::found: return "found";
      case Status::exhausted: return "exhausted";
      case Status::bound_exceeded: return "bound_exceeded";
    }
    return "?";
  }
};

namespace detail {

struct SearchContext {
  const AGame& g;
  std::map<EventId, std::vector<EventId>> children;
  std::vector<EventId> roots;
  long budget;
  long visited = 0;
  // chosen reply value per annotated Opponent extension
  std::map<std::string, ElementName> choices;

  explicit SearchContext(const AGame& game, long bound)
      : g(game), budget(bound) {
    for (const auto& [p, c] : g.pes.es.covering) children[p].push_back(c);
    EventSet covered;
    for (const auto& [p, c] : g.pes.es.covering) covered.insert(c);
    for (const auto& e : g.pes.es.events)
      if (!covered.count(e)) roots.push_back(e);
  }
};

using AnnotatedPath = std::vector<std::pair<EventId, ElementName>>;

inline std::string path_key(const AnnotatedPath& path) {
  std::string out;
  for (const auto& [e, v] : path) out += e + "=" + v + ";";
  return out;
}

// The play so far, viewed as a strategy: a chain whose events are the game
// events of the path. Lets the search evaluate the real semantics without a
// parallel evaluator.
inline AStrategy path_strategy(const AGame& g, const AnnotatedPath& path) {
  AStrategy ast;
  ast.game = g;
  EventId prev;
  for (const auto& [e, v] : path) {
    ast.s.es.events.insert(e);
    ast.s.pol[e] = g.pes.polarity(e);
    ast.sigma[e] = e;
    ast.inst[e] = v;
    if (!prev.empty()) ast.s.es.covering.insert({prev, e});
    prev = e;
  }
  return ast;
}

inline bool path_satisfies_winning(const AGame& g, const AnnotatedPath& path) {
  AStrategy ast = path_strategy(g, path);
  Configuration x;
  for (const auto& [e, _] : path) x.insert(e);
  return eval_formula(ast, x, g.winning_or_true());
}

struct BoundExceeded {};

// Even positions must already satisfy the winning condition (every even play
// is +-maximal for the assembled strategy). Opponent then extends with any
// pebble move and any value; for each, some reply value must keep the
// subtree winnable.
inline bool solve(SearchContext& ctx, const AnnotatedPath& path) {
  if (ctx.visited++ >= ctx.budget) throw BoundExceeded{};
  if (!path_satisfies_winning(ctx.g, path)) return false;
  EventId at = path.empty() ? EventId{} : path.back().first;
  const std::vector<EventId>& opts =
      at.empty() ? ctx.roots
                 : (ctx.children.count(at) ? ctx.children.at(at)
                                           : std::vector<EventId>{});
  for (const auto& c : opts) {
    SortName s = ctx.g.sort_of_var(ctx.g.var_of(c));
    for (const auto& a : ctx.g.algebra.elements_of_sort(s)) {
      AnnotatedPath asked = path;
      asked.push_back({c, a});
      auto replies = ctx.children.find(c);
      if (replies == ctx.children.end() || replies->second.size() != 1)
        throw std::invalid_argument(
            "search: game is not an alternating play tree");
      const EventId& rc = replies->second.front();
      SortName rs = ctx.g.sort_of_var(ctx.g.var_of(rc));
      bool ok = false;
      for (const auto& b : ctx.g.algebra.elements_of_sort(rs)) {
        AnnotatedPath replied = asked;
        replied.push_back({rc, b});
        if (solve(ctx, replied)) {
          ctx.choices[path_key(asked)] = b;
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Assembles the witness strategy from the recorded choices: all Opponent
// extensions with every value (receptivity), one chosen reply each
// (determinism). Strategy events borrow the expansion's naming.
inline AStrategy assemble(SearchContext& ctx) {
  AStrategy ast;
  ast.game = ctx.g;
  struct Item {
    AnnotatedPath path;
    EventId annot_parent;
  };
  std::vector<Item> queue{{{}, ""}};
  std::map<EventId, EventId> parent_of;  // annotated tree edges
  while (!queue.empty()) {
    Item item = queue.back();
    queue.pop_back();
    EventId at = item.path.empty() ? EventId{} : item.path.back().first;
    const std::vector<EventId>& opts =
        at.empty() ? ctx.roots
                   : (ctx.children.count(at) ? ctx.children.at(at)
                                             : std::vector<EventId>{});
    for (const auto& c : opts) {
      SortName s = ctx.g.sort_of_var(ctx.g.var_of(c));
      for (const auto& a : ctx.g.algebra.elements_of_sort(s)) {
        AnnotatedPath asked = item.path;
        asked.push_back({c, a});
        ValueEnv env;
        for (const auto& [e, v] : asked) env[e] = v;
        EventId odd_id = expanded_id(c, env);
        ast.s.es.events.insert(odd_id);
        ast.s.pol[odd_id] = Pol::minus;
        ast.sigma[odd_id] = c;
        ast.inst[odd_id] = a;
        if (!item.annot_parent.empty())
          ast.s.es.covering.insert({item.annot_parent, odd_id});
        parent_of[odd_id] = item.annot_parent;

        ElementName b = ctx.choices.at(path_key(asked));
        const EventId& rc = ctx.children.at(c).front();
        AnnotatedPath replied = asked;
        replied.push_back({rc, b});
        env[rc] = b;
        EventId even_id = expanded_id(rc, env);
        ast.s.es.events.insert(even_id);
        ast.s.pol[even_id] = Pol::plus;
        ast.sigma[even_id] = rc;
        ast.inst[even_id] = b;
        ast.s.es.covering.insert({odd_id, even_id});
        parent_of[even_id] = odd_id;
        queue.push_back({replied, even_id});
      }
    }
  }
  // conflict by branching on the annotated tree
  auto ancestor = [&](const EventId& u, const EventId& v) {
    EventId w = v;
    while (!w.empty()) {
      if (w == u) return true;
      w = parent_of.at(w);
    }
    return false;
  };
  for (const auto& u : ast.s.es.events)
    for (const auto& v : ast.s.es.events)
      if (u < v && !ancestor(u, v) && !ancestor(v, u))
        ast.s.es.min_inconsistent.insert(EventSet{u, v});
  return ast;
}

}  // namespace detail

// Backtracking search for a deterministic winning strategy on a generated
// play-tree game. Complete within the node budget: "exhausted" means no
// such strategy exists.
inline SearchResult search_deterministic_winning(const AGame& g, long bound) {
  detail::SearchContext ctx(g, bound);
  SearchResult result;
  try {
    bool found = detail::solve(ctx, {});
    result.nodes_visited = ctx.visited;
    if (found) {
      result.status = SearchResult::Status::found;
      result.strategy = detail::assemble(ctx);
    } else {
      result.status = SearchResult::Status::exhausted;
    }
  } catch (const detail::BoundExceeded&) {
    result.status = SearchResult::Status::bound_exceeded;
    result.nodes_visited = ctx.visited;
  }
  return result;
}

// --- conjecture harness -----------------------------------------------------

struct GameConjectureInstance {
  std::string id;
  ModelGameKind kind = ModelGameKind::hom;
  Algebra a, b;
  int k = 1, n = 1;
};

struct GameConjectureVerdict {
  std::string id;
  std::string kind;
  int k = 0, n = 0;
  std::string search_status;
  bool oracle = false;
  bool agree = false;
};

// Compares existence of a deterministic winning strategy (via the game
// semantics) against the independent positional oracle, at the truncation
// given by (k, n). This measures the finite shadow of the correspondence;
// outcomes are reported, not assumed.
inline std::vector<GameConjectureVerdict> check_game_conjectures(
    const std::vector<GameConjectureInstance>& instances,
    long bound = 50'000'000) {
  std::vector<GameConjectureVerdict> out;
  for (const auto& inst : instances) {
    GameConjectureVerdict v;
    v.id = inst.id;
    v.kind = model_game_kind_name(inst.kind);
    v.k = inst.k;
    v.n = inst.n;
    AGame g = gen_model_game(inst.kind, inst.a, inst.b, inst.k, inst.n);
    SearchResult sr = search_deterministic_winning(g, bound);
    v.search_status = sr.status_name();
    v.oracle = oracle_decide(inst.kind, inst.a, inst.b, inst.k, inst.n);
    v.agree = (sr.status == SearchResult::Status::found) == v.oracle &&
              sr.status != SearchResult::Status::bound_exceeded;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace esg
