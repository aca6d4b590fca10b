#pragma once

#include <string>
#include <vector>

namespace esg {

/// Accumulates axiom violations found by a validator. An empty report means
/// the checked value satisfies every axiom the validator covers.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string message) { violations.push_back(std::move(message)); }

  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }

  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) {
      out += v;
      out += '\n';
    }
    return out;
  }
};

}  // namespace esg
