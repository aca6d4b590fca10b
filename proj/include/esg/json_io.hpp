#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "esg/access.hpp"
#include "esg/expansion.hpp"
#include "esg/game.hpp"
#include "esg/neutral.hpp"
#include "esg/strategy.hpp"

namespace esg {

using Json = nlohmann::json;

// Document formats. Lists serialize sorted (sets and maps underneath), so
// equal values produce byte-identical documents. Parsers reject duplicate
// entries rather than silently collapsing them.

namespace detail {

inline void reject_duplicates(size_t listed, size_t kept,
                              const std::string& what) {
  if (listed != kept)
    throw std::invalid_argument("duplicate entries in " + what);
}

}  // namespace detail

// --- event structures -------------------------------------------------------

inline Json to_json(const EventStructure& es) {
  Json j;
  j["events"] = es.events;
  Json cov = Json::array();
  for (const auto& [a, b] : es.covering) cov.push_back({a, b});
  j["covering"] = cov;
  Json mi = Json::array();
  for (const auto& m : es.min_inconsistent) mi.push_back(m);
  j["min_inconsistent"] = mi;
  return j;
}

inline EventStructure event_structure_from_json(const Json& j) {
  EventStructure es;
  auto events = j.at("events").get<std::vector<EventId>>();
  es.events = EventSet(events.begin(), events.end());
  detail::reject_duplicates(events.size(), es.events.size(), "events");
  for (const auto& edge : j.value("covering", Json::array())) {
    auto pair = edge.get<std::vector<EventId>>();
    if (pair.size() != 2)
      throw std::invalid_argument("covering entries must be pairs");
    if (!es.covering.insert({pair[0], pair[1]}).second)
      throw std::invalid_argument("duplicate entries in covering");
  }
  for (const auto& m : j.value("min_inconsistent", Json::array())) {
    auto listed = m.get<std::vector<EventId>>();
    EventSet set(listed.begin(), listed.end());
    detail::reject_duplicates(listed.size(), set.size(),
                              "a min_inconsistent member");
    if (!es.min_inconsistent.insert(set).second)
      throw std::invalid_argument("duplicate entries in min_inconsistent");
  }
  return es;
}

// --- algebras ----------------------------------------------------------------

inline Json to_json(const Algebra& a) {
  Json j;
  j["sorts"] = a.sorts;
  Json carrier = Json::array();
  for (const auto& [name, sort] : a.carrier)
    carrier.push_back({{"name", name}, {"sort", sort}});
  j["carrier"] = carrier;
  Json rels = Json::array();
  for (const auto& [name, rel] : a.relations) {
    Json r;
    r["name"] = name;
    r["arity"] = rel.arity;
    Json tuples = Json::array();
    for (const auto& t : rel.tuples) tuples.push_back(t);
    r["tuples"] = tuples;
    rels.push_back(r);
  }
  j["relations"] = rels;
  return j;
}

inline Algebra algebra_from_json(const Json& j) {
  Algebra a;
  auto sorts = j.at("sorts").get<std::vector<SortName>>();
  a.sorts = std::set<SortName>(sorts.begin(), sorts.end());
  detail::reject_duplicates(sorts.size(), a.sorts.size(), "sorts");
  for (const auto& c : j.value("carrier", Json::array())) {
    ElementName name = c.at("name").get<ElementName>();
    if (a.carrier.count(name))
      throw std::invalid_argument("duplicate entries in carrier");
    a.carrier[name] = c.at("sort").get<SortName>();
  }
  for (const auto& r : j.value("relations", Json::array())) {
    RelName name = r.at("name").get<RelName>();
    if (a.relations.count(name))
      throw std::invalid_argument("duplicate entries in relations");
    Algebra::Relation rel;
    rel.arity = r.at("arity").get<std::vector<SortName>>();
    for (const auto& t : r.value("tuples", Json::array())) {
      if (!rel.tuples.insert(t.get<std::vector<ElementName>>()).second)
        throw std::invalid_argument("duplicate tuples in relation " + name);
    }
    a.relations[name] = std::move(rel);
  }
  return a;
}

// --- formulas ----------------------------------------------------------------

inline Json to_json(const Term& t) {
  return t.kind == Term::Kind::variable ? Json{{"var", t.name}}
                                        : Json{{"elem", t.name}};
}

inline Term term_from_json(const Json& j) {
  if (j.contains("var")) return Term::var(j.at("var").get<std::string>());
  if (j.contains("elem")) return Term::elem(j.at("elem").get<std::string>());
  throw std::invalid_argument("term must carry 'var' or 'elem'");
}

inline Json to_json(const FormulaPtr& phi) {
  if (!phi) return Json(nullptr);
  Json j;
  switch (phi->op) {
    case Formula::Op::rel: {
      j["op"] = "rel";
      j["name"] = phi->rel_name;
      Json args = Json::array();
      for (const auto& t : phi->args) args.push_back(to_json(t));
      j["args"] = args;
      return j;
    }
    case Formula::Op::eq:
      j["op"] = "eq";
      j["lhs"] = to_json(phi->args[0]);
      j["rhs"] = to_json(phi->args[1]);
      return j;
    case Formula::Op::def:
      j["op"] = "def";
      j["term"] = to_json(phi->args[0]);
      return j;
    case Formula::Op::conj:
      j["op"] = "and";
      j["lhs"] = to_json(phi->lhs);
      j["rhs"] = to_json(phi->rhs);
      return j;
    case Formula::Op::disj:
      j["op"] = "or";
      j["lhs"] = to_json(phi->lhs);
      j["rhs"] = to_json(phi->rhs);
      return j;
    case Formula::Op::neg:
      j["op"] = "not";
      j["body"] = to_json(phi->lhs);
      return j;
    case Formula::Op::forall:
    case Formula::Op::exists:
      j["op"] = phi->op == Formula::Op::forall ? "forall" : "exists";
      j["var"] = phi->bound;
      j["body"] = to_json(phi->lhs);
      return j;
    case Formula::Op::big_and:
    case Formula::Op::big_or: {
      j["op"] = phi->op == Formula::Op::big_and ? "conj" : "disj";
      Json items = Json::array();
      for (const auto& item : phi->items) items.push_back(to_json(item));
      j["items"] = items;
      return j;
    }
  }
  throw std::logic_error("to_json(formula): unreachable");
}

inline FormulaPtr formula_from_json(const Json& j) {
  if (j.is_null()) return nullptr;
  std::string op = j.at("op").get<std::string>();
  if (op == "rel") {
    std::vector<Term> args;
    for (const auto& t : j.value("args", Json::array()))
      args.push_back(term_from_json(t));
    return f_rel(j.at("name").get<std::string>(), std::move(args));
  }
  if (op == "eq")
    return f_eq(term_from_json(j.at("lhs")), term_from_json(j.at("rhs")));
  if (op == "def") return f_def(term_from_json(j.at("term")));
  if (op == "and")
    return f_and(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  if (op == "or")
    return f_or(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  if (op == "not") return f_not(formula_from_json(j.at("body")));
  if (op == "forall")
    return f_forall(j.at("var").get<std::string>(),
                    formula_from_json(j.at("body")));
  if (op == "exists")
    return f_exists(j.at("var").get<std::string>(),
                    formula_from_json(j.at("body")));
  if (op == "conj" || op == "disj") {
    std::vector<FormulaPtr> items;
    for (const auto& item : j.value("items", Json::array()))
      items.push_back(formula_from_json(item));
    return op == "conj" ? f_big_and(std::move(items))
                        : f_big_or(std::move(items));
  }
  throw std::invalid_argument("unknown formula op '" + op + "'");
}

// --- polarized structures and games ------------------------------------------

inline Json pol_map_to_json(const std::map<EventId, Pol>& pol) {
  Json j = Json::object();
  for (const auto& [e, p] : pol) j[e] = pol_string(p);
  return j;
}

inline Pol pol_from_string(const std::string& s) {
  if (s == "+") return Pol::plus;
  if (s == "-") return Pol::minus;
  if (s == "0") return Pol::neutral;
  throw std::invalid_argument("polarity must be '+', '-' or '0'");
}

inline Json to_json(const PolarizedES& p) {
  Json j;
  j["es"] = to_json(p.es);
  j["pol"] = pol_map_to_json(p.pol);
  return j;
}

inline PolarizedES polarized_es_from_json(const Json& j) {
  PolarizedES p;
  p.es = event_structure_from_json(j.at("es"));
  for (const auto& [e, s] : j.at("pol").items())
    p.pol[e] = pol_from_string(s.get<std::string>());
  return p;
}

inline Json to_json(const AGame& g) {
  Json j = to_json(g.pes);
  j["algebra"] = to_json(g.algebra);
  Json var = Json::object();
  for (const auto& [e, v] : g.var) var[e] = v;
  j["var"] = var;
  Json vars = Json::array();
  for (const auto& [v, s] : g.vars)
    vars.push_back({{"name", v}, {"sort", s}});
  j["vars"] = vars;
  j["winning"] = to_json(g.winning);
  return j;
}

inline AGame agame_from_json(const Json& j) {
  AGame g;
  g.pes = polarized_es_from_json(j);
  g.algebra = algebra_from_json(j.at("algebra"));
  Json var = j.value("var", Json::object());
  for (const auto& [e, v] : var.items()) g.var[e] = v.get<VarName>();
  for (const auto& v : j.value("vars", Json::array())) {
    VarName name = v.at("name").get<VarName>();
    if (g.vars.count(name))
      throw std::invalid_argument("duplicate entries in vars");
    g.vars[name] = v.at("sort").get<SortName>();
  }
  if (j.contains("winning")) g.winning = formula_from_json(j.at("winning"));
  return g;
}

// --- neutral games -----------------------------------------------------------

inline Json to_json(const NeutralGame& ng) {
  Json j = to_json(ng.combined);
  j["neutral_part"] = ng.neutral_events;
  return j;
}

inline NeutralGame neutral_game_from_json(const Json& j) {
  NeutralGame ng;
  ng.combined = agame_from_json(j);
  auto listed = j.at("neutral_part").get<std::vector<EventId>>();
  ng.neutral_events = EventSet(listed.begin(), listed.end());
  detail::reject_duplicates(listed.size(), ng.neutral_events.size(),
                            "neutral_part");
  return ng;
}

// --- strategies ----------------------------------------------------------------

// Strategy documents carry their own event structure, the map, the optional
// instantiation and the full game document they play on.
inline Json strategy_to_json(const PolarizedES& s,
                             const std::map<EventId, EventId>& sigma,
                             const std::map<EventId, ElementName>* inst,
                             const Json& game_doc) {
  Json j;
  j["s_es"] = to_json(s.es);
  j["pol"] = pol_map_to_json(s.pol);
  Json sg = Json::object();
  for (const auto& [a, b] : sigma) sg[a] = b;
  j["sigma"] = sg;
  if (inst) {
    Json in = Json::object();
    for (const auto& [a, b] : *inst) in[a] = b;
    j["inst"] = in;
  }
  j["game"] = game_doc;
  return j;
}

inline Json to_json(const Strategy& st) {
  return strategy_to_json(st.s, st.sigma, nullptr, to_json(st.game));
}

inline Json to_json(const AStrategy& ast) {
  return strategy_to_json(ast.s, ast.sigma, &ast.inst, to_json(ast.game));
}

inline PolarizedES strategy_pes_from_json(const Json& j) {
  PolarizedES s;
  s.es = event_structure_from_json(j.at("s_es"));
  for (const auto& [e, p] : j.at("pol").items())
    s.pol[e] = pol_from_string(p.get<std::string>());
  return s;
}

inline Strategy plain_strategy_from_json(const Json& j) {
  Strategy st;
  st.s = strategy_pes_from_json(j);
  st.game = polarized_es_from_json(j.at("game"));
  for (const auto& [a, b] : j.at("sigma").items())
    st.sigma[a] = b.get<EventId>();
  return st;
}

inline AStrategy astrategy_from_json(const Json& j) {
  AStrategy ast;
  ast.s = strategy_pes_from_json(j);
  ast.game = agame_from_json(j.at("game"));
  for (const auto& [a, b] : j.at("sigma").items())
    ast.sigma[a] = b.get<EventId>();
  for (const auto& [a, b] : j.at("inst").items())
    ast.inst[a] = b.get<ElementName>();
  return ast;
}

// --- expansions ----------------------------------------------------------------

inline Json to_json(const ExpandedGame& x) {
  Json j = to_json(x.pes);
  Json red = Json::object();
  for (const auto& [a, b] : x.red) red[a] = b;
  j["red"] = red;
  Json inst = Json::object();
  for (const auto& [a, b] : x.inst) inst[a] = b;
  j["inst"] = inst;
  j["source"] = to_json(x.source);
  return j;
}

// Expansions are reconstructed from their source game; the document's own
// event list is cross-checked to guard against stale files.
inline ExpandedGame expanded_game_from_json(const Json& j) {
  AGame source = agame_from_json(j.at("source"));
  ExpandedGame x = expand_game(source);
  if (Json(to_json(x.pes.es)) != j.at("es"))
    throw std::invalid_argument(
        "expansion document does not match its source game");
  return x;
}

// --- access levels ---------------------------------------------------------------

inline Json to_json(const LevelMap& lm) {
  Json j;
  j["levels"] = lm.order.levels;
  Json leq = Json::array();
  for (const auto& [a, b] : lm.order.leq) leq.push_back({a, b});
  j["leq"] = leq;
  Json assign = Json::object();
  for (const auto& [e, l] : lm.assign) assign[e] = l;
  j["assign"] = assign;
  return j;
}

inline LevelMap level_map_from_json(const Json& j) {
  LevelMap lm;
  auto levels = j.at("levels").get<std::vector<LevelName>>();
  lm.order.levels = std::set<LevelName>(levels.begin(), levels.end());
  detail::reject_duplicates(levels.size(), lm.order.levels.size(), "levels");
  for (const auto& pair : j.value("leq", Json::array())) {
    auto p = pair.get<std::vector<LevelName>>();
    if (p.size() != 2) throw std::invalid_argument("leq entries must be pairs");
    lm.order.leq.insert({p[0], p[1]});
  }
  Json assign = j.value("assign", Json::object());
  for (const auto& [e, l] : assign.items()) lm.assign[e] = l.get<LevelName>();
  return lm;
}

}  // namespace esg
