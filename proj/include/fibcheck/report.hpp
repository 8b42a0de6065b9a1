#pragma once

#include <string>
#include <vector>

namespace fibcheck {

// Per-criterion verdicts for one theorem instance, with counterexample notes.
struct CheckReport {
  std::string name;
  struct Criterion {
    std::string label;
    bool verdict = false;
    std::string witness;  // empty unless a counterexample was found
  };
  std::vector<Criterion> criteria;

  void add(const std::string& label, bool verdict, const std::string& witness = "") {
    criteria.push_back({label, verdict, witness});
  }
  bool agree() const {
    for (const auto& c : criteria)
      if (c.verdict != criteria.front().verdict) return false;
    return true;
  }
  bool all_true() const {
    for (const auto& c : criteria)
      if (!c.verdict) return false;
    return !criteria.empty();
  }
  std::string summary() const {
    std::string s = name + ":";
    for (const auto& c : criteria) s += " " + c.label + "=" + (c.verdict ? "T" : "F");
    return s;
  }
};

}  // namespace fibcheck
