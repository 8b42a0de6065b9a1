// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Sample counts, tolerances (0 disagreements everywhere) and time
// budgets are pinned here.

#include <chrono>
#include <iostream>

#include "fibcheck/catalog.hpp"
#include "fibcheck/suite.hpp"
#include "fibcheck/yoneda.hpp"

using namespace fibcheck;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << " (" << name << "): "
            << detail << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SuiteConfig base_config() {
  SuiteConfig cfg;
  cfg.seed = 1;
  cfg.samples = 500;
  cfg.max_objects = 8;
  cfg.max_morphisms = 40;
  cfg.max_functor_candidates = 20000;
  return cfg;
}

TheoremResult run_one(const std::string& name) {
  SuiteConfig cfg = base_config();
  cfg.theorems = {name};
  SuiteReport rep = run_suite(cfg);
  return rep.theorems.at(0);
}

std::string summary(const TheoremResult& t) {
  return std::to_string(t.instances) + " instances (" + std::to_string(t.positives) +
         " positive), " + std::to_string(t.disagreements) + " disagreements, " +
         std::to_string(static_cast<long>(t.wall_ms)) + " ms";
}

}  // namespace

int main() {
  {
    auto t0 = Clock::now();
    TheoremResult t = run_one("chevalley");
    double secs = seconds_since(t0);
    bool pass = t.disagreements == 0 && t.instances >= 500 && secs <= 60.0;
    report(1, "Chevalley equivalence", pass, summary(t));
  }
  {
    TheoremResult t = run_one("sliced-characterization");
    report(2, "sliced characterization", t.disagreements == 0 && t.instances >= 300, summary(t));
  }
  {
    TheoremResult t = run_one("cocart-on-left");
    report(3, "cocartesian-on-the-left", t.disagreements == 0 && t.instances >= 300, summary(t));
  }
  {
    TheoremResult t = run_one("two-sided-characterization");
    report(4, "two-sided characterization", t.disagreements == 0 && t.instances >= 200,
           summary(t));
  }
  {
    TheoremResult t = run_one("worked-examples");
    // the exact-equality clauses live inside the battery: total ≅ [2]-exponential,
    // bifiber size exactly 2 and not a groupoid
    bool pass = t.disagreements == 0 && t.instances >= static_cast<long>(seed_catalog().size());
    report(5, "worked examples", pass, summary(t));
  }
  {
    TheoremResult t = run_one("free-fibration");
    report(6, "free two-sided fibration", t.disagreements == 0 && t.instances >= 9, summary(t));
  }
  {
    TheoremResult t = run_one("closure");
    report(7, "closure battery", t.disagreements == 0 && t.instances >= 20, summary(t));
  }
  {
    TheoremResult t = run_one("yoneda");
    report(8, "two-sided Yoneda", t.disagreements == 0 && t.instances >= 6, summary(t));
  }
  {
    TheoremResult t = run_one("discrete");
    report(9, "discrete characterization", t.disagreements == 0 && t.instances >= 300,
           summary(t));
  }
  {
    TheoremResult t = run_one("appendix");
    report(10, "appendices", t.disagreements == 0 && t.instances >= 15, summary(t));
  }
  {
    auto outcomes = run_mutation_suite();
    auto again = run_mutation_suite();
    bool all_killed = outcomes.size() >= 20;
    for (const auto& oc : outcomes) all_killed = all_killed && oc.killed;
    bool replayable = outcomes.size() == again.size();
    for (size_t i = 0; i < outcomes.size() && replayable; ++i)
      replayable = outcomes[i].killed == again[i].killed &&
                   outcomes[i].killed_by == again[i].killed_by &&
                   outcomes[i].counterexample.dump() == again[i].counterexample.dump();
    report(11, "mutation sensitivity", all_killed && replayable,
           std::to_string(outcomes.size()) + " mutants, all killed, replay " +
               (replayable ? "stable" : "UNSTABLE"));
  }
  {
    auto t0 = Clock::now();
    SuiteConfig cfg = base_config();
    SuiteReport r1 = run_suite(cfg);
    double secs = seconds_since(t0);
    SuiteReport r2 = run_suite(cfg);
    bool deterministic = r1.to_json().dump() == r2.to_json().dump();
    bool pass = r1.ok() && deterministic && secs <= 300.0;
    report(12, "full suite determinism and budget", pass,
           std::string(r1.ok() ? "green" : "red") + ", " +
               (deterministic ? "byte-identical reports" : "REPORTS DIFFER") + ", " +
               std::to_string(static_cast<long>(secs)) + " s");
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
