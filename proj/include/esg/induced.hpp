#pragma once

#include <string>
#include <vector>

#include "esg/semantics.hpp"
#include "esg/strategy.hpp"

namespace esg {

// The algebra a strategy inherits from its game: R holds of strategy events
// when they are jointly consistent, each is the latest event for some
// variable in the down-closure of the tuple, and R holds of their values.
inline bool induced_relation(const AStrategy& ast, const RelName& r,
                             const std::vector<EventId>& tuple) {
  auto rel = ast.game.algebra.relations.find(r);
  if (rel == ast.game.algebra.relations.end())
    throw std::invalid_argument("induced_relation: unknown relation " + r);
  if (rel->second.arity.size() != tuple.size())
    throw std::invalid_argument("induced_relation: tuple length differs from arity");
  for (const auto& s : tuple)
    if (!ast.s.es.events.count(s))
      throw std::invalid_argument("induced_relation: unknown strategy event " + s);

  EventSet support(tuple.begin(), tuple.end());
  if (!is_consistent(ast.s.es, support)) return false;
  CausalOrder ord(ast.s.es);
  Configuration x = ord.downward_closure(support);
  if (!is_consistent(ast.s.es, x)) return false;  // conflicting causal pasts
  EventSet gx = map_image(ast.sigma, x);

  std::vector<ElementName> values;
  for (const auto& s : tuple) {
    EventId e = ast.image(s);
    auto top = latest(ast.game, ast.game.var_of(e), gx);
    if (!top || *top != e) return false;
    values.push_back(ast.value(s));
  }
  return rel->second.tuples.count(values) > 0;
}

struct InducedCheckEntry {
  RelName relation;
  std::vector<EventId> tuple;
  bool direct;       // induced_relation
  bool via_formula;  // the existential right-hand side, by brute force
  bool agree() const { return direct == via_formula; }
};

struct InducedCheckReport {
  std::vector<InducedCheckEntry> entries;
  bool all_agree() const {
    for (const auto& e : entries)
      if (!e.agree()) return false;
    return true;
  }
};

// Compares the induced relation against its reformulation through the free
// logic: some configuration containing the tuple satisfies the definedness
// and relation atoms for a vector of variables whose latest events are
// exactly the tuple. Both sides are evaluated exhaustively.
inline InducedCheckReport check_induced_conjecture(const AStrategy& ast) {
  InducedCheckReport report;
  auto configs = enumerate_configurations(ast.s.es);
  std::vector<VarName> variables;
  for (const auto& [v, _] : ast.game.vars) variables.push_back(v);
  std::vector<EventId> events(ast.s.es.events.begin(), ast.s.es.events.end());

  for (const auto& [rname, rel] : ast.game.algebra.relations) {
    size_t k = rel.arity.size();
    std::vector<size_t> idx(k, 0);
    if (events.empty() && k > 0) continue;
    while (true) {
      std::vector<EventId> tuple;
      for (size_t i = 0; i < k; ++i) tuple.push_back(events[idx[i]]);

      bool direct = induced_relation(ast, rname, tuple);

      bool via = false;
      for (const auto& x : configs) {
        bool contains = true;
        for (const auto& s : tuple)
          if (!x.count(s)) {
            contains = false;
            break;
          }
        if (!contains) continue;
        EventSet gx = map_image(ast.sigma, x);
        // variable index vectors v over the declared variables
        std::vector<size_t> vidx(k, 0);
        if (variables.empty() && k > 0) break;
        while (!via) {
          std::vector<FormulaPtr> atoms;
          std::vector<Term> args;
          for (size_t i = 0; i < k; ++i) {
            atoms.push_back(f_def(Term::var(variables[vidx[i]])));
            args.push_back(Term::var(variables[vidx[i]]));
          }
          atoms.push_back(f_rel(rname, args));
          bool latest_match = true;
          for (size_t i = 0; i < k && latest_match; ++i) {
            auto top = latest(ast.game, variables[vidx[i]], gx);
            if (!top || *top != ast.image(tuple[i])) latest_match = false;
          }
          if (latest_match && eval_formula(ast, x, f_big_and(atoms)))
            via = true;
          size_t pos = 0;
          while (pos < k && ++vidx[pos] == variables.size()) {
            vidx[pos] = 0;
            ++pos;
          }
          if (pos == k || k == 0) break;
        }
        if (via) break;
      }

      report.entries.push_back({rname, tuple, direct, via});
      size_t pos = 0;
      while (pos < k && ++idx[pos] == events.size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == k || k == 0) break;
    }
  }
  return report;
}

}  // namespace esg
