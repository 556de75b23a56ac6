#pragma once

#include <string>
#include <vector>

#include "fairx/harness/simulator.hpp"

namespace fairx {

struct ScenarioSpec {
  std::string name;
  std::vector<AdversaryBehavior> behaviors;
  // Composite runs where the STTP itself deviates. Their verdicts are
  // reported but not held to the fairness guarantee.
  bool extension = false;
};

// The honest run, then every single deviation, then (optionally) the
// byzantine-STTP composites.
std::vector<ScenarioSpec> scenario_matrix(bool include_extensions);

std::string scenario_name(const std::vector<AdversaryBehavior>& behaviors);
std::vector<AdversaryBehavior> parse_scenario(const std::string& name);

struct MatrixRow {
  ScenarioSpec spec;
  FairnessVerdict verdict;
  Metrics metrics;
  std::string a_phase;
  std::string b_phase;
  std::string abort_reason;
  bool sttp_misbehavior_detected = false;
  std::vector<std::string> sttp_leaks;
};

struct MatrixReport {
  ScenarioConfig config;
  std::vector<MatrixRow> rows;

  // UNFAIR verdicts outside the extension runs.
  std::size_t unfair_count() const;
  std::size_t leak_count() const;
  std::string text() const;
  std::string jsonl() const;
};

// Sessions share only the read-only world, so `threads` > 1 runs them
// concurrently; row order and content do not depend on it.
MatrixReport run_matrix(const World& world, const std::vector<ScenarioSpec>& specs,
                        unsigned threads = 1);
MatrixReport run_matrix(const ScenarioConfig& config, bool include_extensions,
                        unsigned threads = 1);

}  // namespace fairx
