#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "esg/validation.hpp"

namespace esg {

using EventId = std::string;
using EventSet = std::set<EventId>;
using EdgeSet = std::set<std::pair<EventId, EventId>>;

// Finite event structure. Causality is stored as covering edges (immediate
// dependencies); the partial order is their reflexive-transitive closure.
// Consistency is stored as the antichain of minimal inconsistent subsets:
// a set is consistent iff it includes none of them.
struct EventStructure {
  EventSet events;
  EdgeSet covering;
  std::set<EventSet> min_inconsistent;

  bool operator==(const EventStructure&) const = default;
};

// A configuration is just an event subset; validity (down-closed and
// consistent) is checked by the free functions below.
using Configuration = EventSet;

inline std::string show_set(const EventSet& xs) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  out += "}";
  return out;
}

// Computed view of the causal order of an event structure: down-sets,
// comparability, and the derived immediate-dependency relation.
class CausalOrder {
 public:
  explicit CausalOrder(const EventStructure& es) {
    std::map<EventId, EventSet> preds;
    std::map<EventId, int> out_degree;
    for (const auto& e : es.events) {
      preds[e];
      out_degree[e] = 0;
    }
    for (const auto& [a, b] : es.covering) {
      if (!es.events.count(a) || !es.events.count(b)) continue;
      preds[b].insert(a);
    }
    // Kahn's algorithm over reversed edges; below_[e] accumulates [e].
    std::map<EventId, size_t> missing;
    std::deque<EventId> ready;
    for (const auto& [e, ps] : preds) {
      missing[e] = ps.size();
      if (ps.empty()) ready.push_back(e);
    }
    std::map<EventId, EventSet> succs;
    for (const auto& [a, b] : es.covering) {
      if (es.events.count(a) && es.events.count(b)) succs[a].insert(b);
    }
    size_t done = 0;
    while (!ready.empty()) {
      EventId e = ready.front();
      ready.pop_front();
      ++done;
      EventSet below{e};
      for (const auto& p : preds[e]) {
        const auto& pb = below_.at(p);
        below.insert(pb.begin(), pb.end());
      }
      below_[e] = std::move(below);
      for (const auto& s : succs[e]) {
        if (--missing[s] == 0) ready.push_back(s);
      }
    }
    cyclic_ = done != es.events.size();
  }

  bool cyclic() const { return cyclic_; }

  // [e], including e itself.
  const EventSet& down_set(const EventId& e) const { return below_.at(e); }

  // [e), the strict causal past.
  EventSet strict_down_set(const EventId& e) const {
    EventSet d = down_set(e);
    d.erase(e);
    return d;
  }

  bool leq(const EventId& a, const EventId& b) const {
    auto it = below_.find(b);
    return it != below_.end() && it->second.count(a) > 0;
  }

  bool comparable(const EventId& a, const EventId& b) const {
    return leq(a, b) || leq(b, a);
  }

  EventSet downward_closure(const EventSet& xs) const {
    EventSet out;
    for (const auto& x : xs) {
      const auto& d = down_set(x);
      out.insert(d.begin(), d.end());
    }
    return out;
  }

  bool down_closed(const EventSet& xs) const {
    for (const auto& x : xs)
      for (const auto& d : down_set(x))
        if (!xs.count(d)) return false;
    return true;
  }

  // Derived immediate dependency: a < b with nothing in between.
  EdgeSet immediate() const {
    EdgeSet out;
    for (const auto& [b, below] : below_) {
      for (const auto& a : below) {
        if (a == b) continue;
        bool gap = false;
        for (const auto& m : below) {
          if (m != a && m != b && leq(a, m)) {
            gap = true;
            break;
          }
        }
        if (!gap) out.insert({a, b});
      }
    }
    return out;
  }

 private:
  std::map<EventId, EventSet> below_;
  bool cyclic_ = false;
};

inline bool is_consistent(const EventStructure& es, const EventSet& xs) {
  for (const auto& m : es.min_inconsistent) {
    if (std::includes(xs.begin(), xs.end(), m.begin(), m.end())) return false;
  }
  return true;
}

inline bool is_configuration(const EventStructure& es, const CausalOrder& ord,
                             const EventSet& xs) {
  for (const auto& x : xs)
    if (!es.events.count(x)) return false;
  return ord.down_closed(xs) && is_consistent(es, xs);
}

inline bool is_configuration(const EventStructure& es, const EventSet& xs) {
  return is_configuration(es, CausalOrder(es), xs);
}

// e is enabled at x when x ∪ {e} is again a configuration.
inline bool is_enabled(const EventStructure& es, const CausalOrder& ord,
                       const Configuration& x, const EventId& e) {
  if (!es.events.count(e)) return false;
  if (x.count(e)) return false;
  for (const auto& p : ord.strict_down_set(e))
    if (!x.count(p)) return false;
  EventSet ext = x;
  ext.insert(e);
  return is_consistent(es, ext);
}

inline bool is_enabled(const EventStructure& es, const Configuration& x,
                       const EventId& e) {
  CausalOrder ord(es);
  if (!is_configuration(es, ord, x))
    throw std::invalid_argument("is_enabled: x is not a configuration");
  return is_enabled(es, ord, x, e);
}

// All configurations, grown from the empty one by single enabled events.
// Output-sensitive, so it stays cheap on structures whose configuration
// family is small even when the event count is large.
inline std::set<Configuration> enumerate_configurations(
    const EventStructure& es) {
  CausalOrder ord(es);
  std::set<Configuration> seen;
  std::deque<Configuration> frontier;
  seen.insert(Configuration{});
  frontier.push_back(Configuration{});
  while (!frontier.empty()) {
    Configuration x = frontier.front();
    frontier.pop_front();
    for (const auto& e : es.events) {
      if (x.count(e)) continue;
      if (!is_enabled(es, ord, x, e)) continue;
      Configuration y = x;
      y.insert(e);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

struct RelationTables {
  EdgeSet leq;         // reflexive-transitive closure of covering
  EdgeSet immediate;   // covering of the closure
  EdgeSet concurrent;  // incomparable and pairwise consistent
};

inline RelationTables relations(const EventStructure& es) {
  CausalOrder ord(es);
  if (ord.cyclic())
    throw std::invalid_argument("relations: causality is cyclic");
  RelationTables t;
  for (const auto& b : es.events)
    for (const auto& a : ord.down_set(b)) t.leq.insert({a, b});
  t.immediate = ord.immediate();
  for (const auto& a : es.events) {
    for (const auto& b : es.events) {
      if (a >= b) continue;
      if (ord.comparable(a, b)) continue;
      if (!is_consistent(es, EventSet{a, b})) continue;
      t.concurrent.insert({a, b});
      t.concurrent.insert({b, a});
    }
  }
  return t;
}

// Rebuilds covering as the transitive reduction of its closure, normalizing
// inputs that listed redundant (transitively implied) edges.
inline EventStructure normalized(const EventStructure& es) {
  CausalOrder ord(es);
  if (ord.cyclic()) return es;  // left as-is; validation reports the cycle
  EventStructure out = es;
  out.covering = ord.immediate();
  return out;
}

inline ValidationReport validate_event_structure(const EventStructure& es) {
  ValidationReport report;
  for (const auto& [a, b] : es.covering) {
    if (!es.events.count(a) || !es.events.count(b))
      report.add("covering edge (" + a + "," + b + ") mentions unknown event");
    if (a == b) report.add("covering edge (" + a + "," + a + ") is a self-loop");
  }
  CausalOrder ord(es);
  if (ord.cyclic()) {
    report.add("causality cycle: covering closure is not a partial order");
    return report;  // the remaining axioms presuppose an order
  }
  for (const auto& m : es.min_inconsistent) {
    if (m.size() <= 1)
      report.add("min_inconsistent member " + show_set(m) +
                 " has size <= 1 (singletons are consistent)");
    for (const auto& e : m)
      if (!es.events.count(e))
        report.add("min_inconsistent member " + show_set(m) +
                   " mentions unknown event " + e);
  }
  for (const auto& m1 : es.min_inconsistent) {
    for (const auto& m2 : es.min_inconsistent) {
      if (m1 == m2) continue;
      if (std::includes(m2.begin(), m2.end(), m1.begin(), m1.end()))
        report.add("min_inconsistent is not an antichain: " + show_set(m1) +
                   " is a subset of " + show_set(m2));
    }
  }
  // Closure axiom for Con: X consistent, e <= e' in X, implies X ∪ {e}
  // consistent. A violation exists iff some minimal inconsistent M has a
  // member e with a distinct e' above it such that (M \ {e}) ∪ {e'} is
  // consistent; checking that is equivalent to checking all subsets X.
  for (const auto& m : es.min_inconsistent) {
    for (const auto& e : m) {
      if (!es.events.count(e)) continue;
      for (const auto& e2 : es.events) {
        if (e2 == e || !ord.leq(e, e2)) continue;
        EventSet witness = m;
        witness.erase(e);
        witness.insert(e2);
        if (is_consistent(es, witness)) {
          report.add("Con closure axiom violated: " + show_set(witness) +
                     " is consistent, " + e + " <= " + e2 +
                     ", but adding " + e + " reaches " + show_set(m));
        }
      }
    }
  }
  return report;
}

// Partial map of event structures. Totality is not required here; strategy
// maps impose it separately.
struct EsMap {
  EventStructure domain;
  EventStructure codomain;
  std::map<EventId, EventId> mapping;
};

inline EventSet map_image(const std::map<EventId, EventId>& f,
                          const EventSet& xs) {
  EventSet out;
  for (const auto& x : xs) {
    auto it = f.find(x);
    if (it != f.end()) out.insert(it->second);
  }
  return out;
}

// Checks the two map axioms by enumerating every configuration of the
// domain: direct images are configurations, and the map is injective on
// each configuration.
inline ValidationReport check_map(const EsMap& f) {
  ValidationReport report;
  for (const auto& [a, b] : f.mapping) {
    if (!f.domain.events.count(a))
      report.add("map defined on unknown event " + a);
    if (!f.codomain.events.count(b))
      report.add("map sends " + a + " to unknown event " + b);
  }
  if (!report.ok()) return report;
  CausalOrder cod_ord(f.codomain);
  for (const auto& x : enumerate_configurations(f.domain)) {
    EventSet image = map_image(f.mapping, x);
    std::map<EventId, EventId> seen;
    for (const auto& s : x) {
      auto it = f.mapping.find(s);
      if (it == f.mapping.end()) continue;
      auto [prev, fresh] = seen.emplace(it->second, s);
      if (!fresh)
        report.add("not locally injective: " + prev->second + " and " + s +
                   " in configuration " + show_set(x) + " share image " +
                   it->second);
    }
    if (!is_configuration(f.codomain, cod_ord, image)) {
      if (!cod_ord.down_closed(image))
        report.add("image " + show_set(image) + " of configuration " +
                   show_set(x) + " is not down-closed");
      else
        report.add("image " + show_set(image) + " of configuration " +
                   show_set(x) + " is not consistent");
    }
  }
  return report;
}

}  // namespace esg
