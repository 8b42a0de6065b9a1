#pragma once

#include "fibcheck/sample.hpp"

namespace fibcheck {

struct TheoremResult {
  std::string name;
  long instances = 0;
  long agreements = 0;
  long disagreements = 0;
  long positives = 0;  // instances where the checked property held
  std::vector<Json> counterexamples;
  double wall_ms = 0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<TheoremResult> theorems;
  bool ok() const {
    for (const auto& t : theorems)
      if (t.disagreements != 0) return false;
    return true;
  }
  // deterministic: timing excluded unless requested
  Json to_json(bool with_timing = false) const;
  std::string to_text() const;
};

std::vector<std::string> suite_theorem_names();
SuiteReport run_suite(const SuiteConfig& cfg);

// re-runs a counterexample from its recipe; true if the failure reproduces
bool replay_counterexample(const Json& ce);

// ---- mutation testing ----

struct Mutant {
  std::string name;
  Json edit;  // {"cat": <catalog name>, "cell": [g, f], "value": h} table edit
};

// ≥ 20 single-table mutations of catalog fixtures
std::vector<Mutant> mutation_corpus();

// builds the mutated table without validation (decision procedures see it raw)
CatPtr build_mutant_cat(const Json& edit);

struct MutationOutcome {
  std::string mutant;
  bool killed = false;
  std::string killed_by;  // which suite went red
  Json counterexample;
};

std::vector<MutationOutcome> run_mutation_suite();

}  // namespace fibcheck
