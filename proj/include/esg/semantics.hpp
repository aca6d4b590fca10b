#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "esg/formula.hpp"
#include "esg/strategy.hpp"

namespace esg {

// The carrier values currently held by the latest event of each variable:
// last(x) = inst{ s ∈ x | σ(s) = latest(var(σ(s)), σx) }.
inline std::set<ElementName> last_values(const AStrategy& ast,
                                         const Configuration& x) {
  std::set<ElementName> out;
  EventSet gx = map_image(ast.sigma, x);
  for (const auto& s : x) {
    EventId e = ast.image(s);
    auto top = latest(ast.game, ast.game.var_of(e), gx);
    if (top && *top == e) out.insert(ast.value(s));
  }
  return out;
}

// Terms may fail to denote. A variable denotes when some event of the image
// carries it; an element name denotes when it is among the latest values.
inline std::optional<ElementName> eval_term(const AStrategy& ast,
                                            const Configuration& x,
                                            const Term& t) {
  if (t.kind == Term::Kind::element) {
    if (last_values(ast, x).count(t.name)) return t.name;
    return std::nullopt;
  }
  EventSet gx = map_image(ast.sigma, x);
  auto top = latest(ast.game, t.name, gx);
  if (!top) return std::nullopt;
  for (const auto& s : x)
    if (ast.image(s) == *top) return ast.value(s);
  throw std::logic_error("eval_term: latest image has no preimage in x");
}

// Configuration-indexed semantics of free-logic assertions, by structural
// recursion. Quantifiers range over the sort-matching latest values; the
// substitution instance is evaluated recursively.
inline bool eval_formula(const AStrategy& ast, const Configuration& x,
                         const FormulaPtr& phi) {
  if (!phi) return true;  // missing winning condition: empty conjunction
  switch (phi->op) {
    case Formula::Op::rel: {
      auto it = ast.game.algebra.relations.find(phi->rel_name);
      if (it == ast.game.algebra.relations.end())
        throw std::invalid_argument("eval: unknown relation " + phi->rel_name);
      std::vector<ElementName> tuple;
      for (const auto& t : phi->args) {
        auto v = eval_term(ast, x, t);
        if (!v) return false;
        tuple.push_back(*v);
      }
      return it->second.tuples.count(tuple) > 0;
    }
    case Formula::Op::eq: {
      auto v1 = eval_term(ast, x, phi->args[0]);
      auto v2 = eval_term(ast, x, phi->args[1]);
      return v1 && v2 && *v1 == *v2;
    }
    case Formula::Op::def:
      return eval_term(ast, x, phi->args[0]).has_value();
    case Formula::Op::conj:
      return eval_formula(ast, x, phi->lhs) && eval_formula(ast, x, phi->rhs);
    case Formula::Op::disj:
      return eval_formula(ast, x, phi->lhs) || eval_formula(ast, x, phi->rhs);
    case Formula::Op::neg:
      return !eval_formula(ast, x, phi->lhs);
    case Formula::Op::forall: {
      SortName sort = ast.game.sort_of_var(phi->bound);
      auto held = last_values(ast, x);
      for (const auto& a : held) {
        auto it = ast.game.algebra.carrier.find(a);
        if (it == ast.game.algebra.carrier.end() || it->second != sort)
          continue;
        if (!eval_formula(ast, x, substitute(phi->lhs, a, phi->bound)))
          return false;
      }
      return true;
    }
    case Formula::Op::exists: {
      SortName sort = ast.game.sort_of_var(phi->bound);
      auto held = last_values(ast, x);
      for (const auto& a : held) {
        auto it = ast.game.algebra.carrier.find(a);
        if (it == ast.game.algebra.carrier.end() || it->second != sort)
          continue;
        if (eval_formula(ast, x, substitute(phi->lhs, a, phi->bound)))
          return true;
      }
      return false;
    }
    case Formula::Op::big_and:
      for (const auto& item : phi->items)
        if (!eval_formula(ast, x, item)) return false;
      return true;
    case Formula::Op::big_or:
      for (const auto& item : phi->items)
        if (eval_formula(ast, x, item)) return true;
      return false;
  }
  throw std::logic_error("eval_formula: unreachable");
}

// Records one line per immediate subformula plus the whole, for harness
// reports about a failing configuration.
inline std::vector<std::string> eval_trace(const AStrategy& ast,
                                           const Configuration& x,
                                           const FormulaPtr& phi) {
  std::vector<std::string> out;
  auto line = [&](const FormulaPtr& f) {
    out.push_back(formula_to_string(f) + " := " +
                  (eval_formula(ast, x, f) ? "true" : "false"));
  };
  if (phi) {
    if (phi->lhs) line(phi->lhs);
    if (phi->rhs) line(phi->rhs);
    for (const auto& item : phi->items) line(item);
  }
  line(phi);
  return out;
}

struct WinningVerdict {
  bool winning = false;
  std::optional<Configuration> witness;  // a failing +-maximal configuration
};

// A strategy is winning for W when every +-maximal configuration satisfies
// it. The condition is a parameter so the same strategy can be tested
// against transported or negated conditions.
inline WinningVerdict is_winning(const AStrategy& ast, const FormulaPtr& w) {
  for (const auto& x : plus_maximal_configurations(ast.s)) {
    if (!eval_formula(ast, x, w)) return {false, x};
  }
  return {true, std::nullopt};
}

}  // namespace esg
