#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "esg/validation.hpp"

namespace esg {

using SortName = std::string;
using ElementName = std::string;
using RelName = std::string;
using VarName = std::string;

// Tagging scheme for disjoint unions: names from the left operand get the
// prefix "1:", names from the right get "2:". Applied uniformly to events,
// elements, sorts, relation symbols and variables.
inline std::string side_tag(int side, const std::string& name) {
  return (side == 1 ? "1:" : "2:") + name;
}

inline int tag_side(const std::string& name) {
  if (name.rfind("1:", 0) == 0) return 1;
  if (name.rfind("2:", 0) == 0) return 2;
  return 0;
}

inline std::string untag(const std::string& name) {
  int s = tag_side(name);
  return s == 0 ? name : name.substr(2);
}

// Finite relational many-sorted algebra: a sorted carrier plus relation
// symbols interpreted as sets of sort-correct tuples.
struct Algebra {
  struct Relation {
    std::vector<SortName> arity;  // the arity word s1...sk
    std::set<std::vector<ElementName>> tuples;
    bool operator==(const Relation&) const = default;
  };

  std::set<SortName> sorts;
  std::map<ElementName, SortName> carrier;  // element -> its sort
  std::map<RelName, Relation> relations;

  bool operator==(const Algebra&) const = default;

  std::set<ElementName> elements_of_sort(const SortName& s) const {
    std::set<ElementName> out;
    for (const auto& [name, sort] : carrier)
      if (sort == s) out.insert(name);
    return out;
  }
};

// Finite set of sorted variables. The countable reservoir of variables is
// materialized per game as the variables actually mentioned.
using VariableSet = std::map<VarName, SortName>;

inline ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport report;
  for (const auto& [name, sort] : a.carrier) {
    if (!a.sorts.count(sort))
      report.add("element " + name + " has unknown sort " + sort);
  }
  for (const auto& [rname, rel] : a.relations) {
    for (const auto& s : rel.arity)
      if (!a.sorts.count(s))
        report.add("relation " + rname + " uses unknown sort " + s);
    for (const auto& tuple : rel.tuples) {
      if (tuple.size() != rel.arity.size()) {
        report.add("relation " + rname + " has a tuple of wrong length");
        continue;
      }
      for (size_t i = 0; i < tuple.size(); ++i) {
        auto it = a.carrier.find(tuple[i]);
        if (it == a.carrier.end())
          report.add("relation " + rname + " tuple mentions unknown element " +
                     tuple[i]);
        else if (it->second != rel.arity[i])
          report.add("relation " + rname + " tuple position " +
                     std::to_string(i + 1) + ": element " + tuple[i] +
                     " has sort " + it->second + ", expected " + rel.arity[i]);
      }
    }
  }
  return report;
}

// Parallel composition of algebras: tagged disjoint union of sorts, carrier,
// signature and interpretations.
inline Algebra par_algebra(const Algebra& a, const Algebra& b) {
  Algebra out;
  auto add_side = [&out](const Algebra& src, int side) {
    for (const auto& s : src.sorts) out.sorts.insert(side_tag(side, s));
    for (const auto& [name, sort] : src.carrier)
      out.carrier[side_tag(side, name)] = side_tag(side, sort);
    for (const auto& [rname, rel] : src.relations) {
      Algebra::Relation tagged;
      for (const auto& s : rel.arity) tagged.arity.push_back(side_tag(side, s));
      for (const auto& tuple : rel.tuples) {
        std::vector<ElementName> t;
        for (const auto& e : tuple) t.push_back(side_tag(side, e));
        tagged.tuples.insert(std::move(t));
      }
      out.relations[side_tag(side, rname)] = std::move(tagged);
    }
  };
  add_side(a, 1);
  add_side(b, 2);
  return out;
}

}  // namespace esg
