#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "esg/algebra.hpp"
#include "esg/validation.hpp"

namespace esg {

// A term of the free logic: a variable or a carrier element name.
struct Term {
  enum class Kind { variable, element };
  Kind kind;
  std::string name;

  static Term var(std::string n) { return {Kind::variable, std::move(n)}; }
  static Term elem(std::string n) { return {Kind::element, std::move(n)}; }

  bool operator==(const Term&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Free-logic assertion syntax. Binary and/or are kept distinct from the
// finite indexed conjunction/disjunction so both forms can be expressed
// and compared.
struct Formula {
  enum class Op {
    rel,      // R(t1..tk)
    eq,       // t1 = t2
    def,      // E(t): the term denotes
    conj,     // φ ∧ ψ
    disj,     // φ ∨ ψ
    neg,      // ¬φ
    forall,   // ∀α.φ
    exists,   // ∃α.φ
    big_and,  // finite indexed conjunction
    big_or    // finite indexed disjunction
  };

  Op op;
  RelName rel_name;              // rel
  std::vector<Term> args;        // rel, eq (two entries), def (one entry)
  VarName bound;                 // forall, exists
  FormulaPtr lhs, rhs;           // conj, disj; lhs also for neg/quantifiers
  std::vector<FormulaPtr> items;  // big_and, big_or
};

inline FormulaPtr f_rel(RelName name, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::rel;
  f->rel_name = std::move(name);
  f->args = std::move(args);
  return f;
}

inline FormulaPtr f_eq(Term a, Term b) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::eq;
  f->args = {std::move(a), std::move(b)};
  return f;
}

inline FormulaPtr f_def(Term t) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::def;
  f->args = {std::move(t)};
  return f;
}

inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::conj;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::disj;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

inline FormulaPtr f_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::neg;
  f->lhs = std::move(a);
  return f;
}

inline FormulaPtr f_forall(VarName v, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::forall;
  f->bound = std::move(v);
  f->lhs = std::move(body);
  return f;
}

inline FormulaPtr f_exists(VarName v, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::exists;
  f->bound = std::move(v);
  f->lhs = std::move(body);
  return f;
}

inline FormulaPtr f_big_and(std::vector<FormulaPtr> items) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::big_and;
  f->items = std::move(items);
  return f;
}

inline FormulaPtr f_big_or(std::vector<FormulaPtr> items) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::big_or;
  f->items = std::move(items);
  return f;
}

// The always-true condition: the conjunction over the empty index set.
inline FormulaPtr f_true() { return f_big_and({}); }
inline FormulaPtr f_false() { return f_big_or({}); }

// Classical encoding of implication; the logic has no primitive arrow.
inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return f_or(f_not(std::move(a)), std::move(b));
}

inline FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return f_and(f_implies(a, b), f_implies(b, a));
}

inline std::string term_to_string(const Term& t) {
  return t.kind == Term::Kind::variable ? t.name : "'" + t.name + "'";
}

inline std::string formula_to_string(const FormulaPtr& phi) {
  if (!phi) return "AND{}";
  auto join_args = [&](const char* sep) {
    std::string out;
    for (size_t i = 0; i < phi->args.size(); ++i) {
      if (i) out += sep;
      out += term_to_string(phi->args[i]);
    }
    return out;
  };
  switch (phi->op) {
    case Formula::Op::rel:
      return phi->rel_name + "(" + join_args(",") + ")";
    case Formula::Op::eq:
      return "(" + term_to_string(phi->args[0]) + " = " +
             term_to_string(phi->args[1]) + ")";
    case Formula::Op::def:
      return "E(" + term_to_string(phi->args[0]) + ")";
    case Formula::Op::conj:
      return "(" + formula_to_string(phi->lhs) + " & " +
             formula_to_string(phi->rhs) + ")";
    case Formula::Op::disj:
      return "(" + formula_to_string(phi->lhs) + " | " +
             formula_to_string(phi->rhs) + ")";
    case Formula::Op::neg:
      return "!" + formula_to_string(phi->lhs);
    case Formula::Op::forall:
      return "forall " + phi->bound + "." + formula_to_string(phi->lhs);
    case Formula::Op::exists:
      return "exists " + phi->bound + "." + formula_to_string(phi->lhs);
    case Formula::Op::big_and:
    case Formula::Op::big_or: {
      std::string out = phi->op == Formula::Op::big_and ? "AND{" : "OR{";
      for (size_t i = 0; i < phi->items.size(); ++i) {
        if (i) out += ", ";
        out += formula_to_string(phi->items[i]);
      }
      return out + "}";
    }
  }
  return "?";
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->rel_name != b->rel_name || a->args != b->args ||
      a->bound != b->bound)
    return false;
  if (!formula_equal(a->lhs, b->lhs) || !formula_equal(a->rhs, b->rhs))
    return false;
  if (a->items.size() != b->items.size()) return false;
  for (size_t i = 0; i < a->items.size(); ++i)
    if (!formula_equal(a->items[i], b->items[i])) return false;
  return true;
}

namespace detail {

inline FormulaPtr substitute_impl(const FormulaPtr& phi, const ElementName& a,
                                  const VarName& alpha) {
  auto sub_term = [&](const Term& t) {
    if (t.kind == Term::Kind::variable && t.name == alpha)
      return Term::elem(a);
    return t;
  };
  auto f = std::make_shared<Formula>(*phi);
  switch (phi->op) {
    case Formula::Op::rel:
    case Formula::Op::eq:
    case Formula::Op::def:
      for (auto& t : f->args) t = sub_term(t);
      return f;
    case Formula::Op::conj:
    case Formula::Op::disj:
      f->lhs = substitute_impl(phi->lhs, a, alpha);
      f->rhs = substitute_impl(phi->rhs, a, alpha);
      return f;
    case Formula::Op::neg:
      f->lhs = substitute_impl(phi->lhs, a, alpha);
      return f;
    case Formula::Op::forall:
    case Formula::Op::exists:
      if (phi->bound == alpha) return f;  // occurrence is bound here
      f->lhs = substitute_impl(phi->lhs, a, alpha);
      return f;
    case Formula::Op::big_and:
    case Formula::Op::big_or:
      for (auto& item : f->items) item = substitute_impl(item, a, alpha);
      return f;
  }
  throw std::logic_error("substitute: unreachable");
}

}  // namespace detail

// φ[a/α]: replaces free occurrences of the variable by the element name.
// Element names are never bound, so no capture is possible.
inline FormulaPtr substitute(const FormulaPtr& phi, const ElementName& a,
                             const VarName& alpha) {
  return detail::substitute_impl(phi, a, alpha);
}

// Sort-checked entry point: rejects substitutions of an element whose sort
// differs from the variable's declared sort.
inline FormulaPtr substitute(const FormulaPtr& phi, const ElementName& a,
                             const VarName& alpha, const Algebra& algebra,
                             const VariableSet& vars) {
  auto ve = vars.find(alpha);
  auto ae = algebra.carrier.find(a);
  if (ve == vars.end())
    throw std::invalid_argument("substitute: unknown variable " + alpha);
  if (ae == algebra.carrier.end())
    throw std::invalid_argument("substitute: unknown element " + a);
  if (ve->second != ae->second)
    throw std::invalid_argument("substitute: sort mismatch between " + alpha +
                                " and " + a);
  return detail::substitute_impl(phi, a, alpha);
}

// Well-sortedness of an assertion w.r.t. an algebra and variable set:
// relation atoms must match their symbol's arity word, and every mentioned
// name must be declared. Equality is left unconstrained across sorts; the
// semantics simply never equates elements of different sorts.
inline ValidationReport check_formula(const FormulaPtr& phi,
                                      const Algebra& algebra,
                                      const VariableSet& vars) {
  ValidationReport report;
  if (!phi) return report;
  auto term_sort = [&](const Term& t) -> std::string {
    if (t.kind == Term::Kind::variable) {
      auto it = vars.find(t.name);
      if (it == vars.end()) {
        report.add("formula mentions unknown variable " + t.name);
        return "";
      }
      return it->second;
    }
    auto it = algebra.carrier.find(t.name);
    if (it == algebra.carrier.end()) {
      report.add("formula mentions unknown element " + t.name);
      return "";
    }
    return it->second;
  };
  switch (phi->op) {
    case Formula::Op::rel: {
      auto it = algebra.relations.find(phi->rel_name);
      if (it == algebra.relations.end()) {
        report.add("formula mentions unknown relation " + phi->rel_name);
        break;
      }
      if (it->second.arity.size() != phi->args.size()) {
        report.add("relation " + phi->rel_name + " applied to " +
                   std::to_string(phi->args.size()) + " terms, arity is " +
                   std::to_string(it->second.arity.size()));
        break;
      }
      for (size_t i = 0; i < phi->args.size(); ++i) {
        std::string s = term_sort(phi->args[i]);
        if (!s.empty() && s != it->second.arity[i])
          report.add("relation " + phi->rel_name + " argument " +
                     std::to_string(i + 1) + " has sort " + s + ", expected " +
                     it->second.arity[i]);
      }
      break;
    }
    case Formula::Op::eq:
    case Formula::Op::def:
      for (const auto& t : phi->args) term_sort(t);
      break;
    case Formula::Op::conj:
    case Formula::Op::disj:
      report.merge(check_formula(phi->lhs, algebra, vars));
      report.merge(check_formula(phi->rhs, algebra, vars));
      break;
    case Formula::Op::neg:
      report.merge(check_formula(phi->lhs, algebra, vars));
      break;
    case Formula::Op::forall:
    case Formula::Op::exists:
      if (!vars.count(phi->bound))
        report.add("quantifier binds undeclared variable " + phi->bound);
      report.merge(check_formula(phi->lhs, algebra, vars));
      break;
    case Formula::Op::big_and:
    case Formula::Op::big_or:
      for (const auto& item : phi->items)
        report.merge(check_formula(item, algebra, vars));
      break;
  }
  return report;
}

// Renames every element, relation and variable occurrence with the given
// side tag; used when a formula over one algebra is transported into a
// parallel composition.
inline FormulaPtr tag_formula(const FormulaPtr& phi, int side) {
  if (!phi) return phi;
  auto f = std::make_shared<Formula>(*phi);
  auto tag_term = [&](Term& t) { t.name = side_tag(side, t.name); };
  switch (phi->op) {
    case Formula::Op::rel:
      f->rel_name = side_tag(side, phi->rel_name);
      for (auto& t : f->args) tag_term(t);
      return f;
    case Formula::Op::eq:
    case Formula::Op::def:
      for (auto& t : f->args) tag_term(t);
      return f;
    case Formula::Op::conj:
    case Formula::Op::disj:
      f->lhs = tag_formula(phi->lhs, side);
      f->rhs = tag_formula(phi->rhs, side);
      return f;
    case Formula::Op::neg:
      f->lhs = tag_formula(phi->lhs, side);
      return f;
    case Formula::Op::forall:
    case Formula::Op::exists:
      f->bound = side_tag(side, phi->bound);
      f->lhs = tag_formula(phi->lhs, side);
      return f;
    case Formula::Op::big_and:
    case Formula::Op::big_or:
      for (auto& item : f->items) item = tag_formula(item, side);
      return f;
  }
  throw std::logic_error("tag_formula: unreachable");
}

}  // namespace esg
