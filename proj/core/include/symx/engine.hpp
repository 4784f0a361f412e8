// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symx/context.hpp"
#include "symx/kernel.hpp"
#include "symx/report.hpp"
#include "symx/solver.hpp"

namespace symx {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExploreConfig {
  double overall_timeout_s = 300.0;
  double solver_timeout_s = 10.0;
  // Approximate memory budget measured in live term nodes.
  uint64_t memory_budget_nodes = 8000000;
  bool array_min = true;
  uint64_t step_budget = 100000;
  uint64_t max_paths = 1000000;
  uint64_t max_frontier = 50000;
  bool stop_on_first_error = false;
  bool collect_paths = false;
  // "builtin" or "external:<command line>".
  std::string solver = "builtin";
  unsigned builtin_max_bits = 20;
  size_t min_literal_threshold = 8;

  void validate() const;
  std::map<std::string, std::string> echo() const;
};

using TestBody = std::function<void(ExecutionContext&)>;

struct ExploreResult {
  Report report;
  std::vector<PathSummary> paths;      // populated when cfg.collect_paths
  std::vector<size_t> dequeue_depths;  // BFS order check hook
};

/// Breadth-first fork-by-re-execution exploration: the frontier holds
/// decision traces, each dequeue re-runs the test body from scratch under
/// its trace, and fresh branch sites enqueue the sibling trace.
class Engine {
public:
  explicit Engine(ExploreConfig cfg);

  ExploreResult explore(const std::string& test_name, const TestBody& body);

  const ExploreConfig& config() const { return cfg_; }

private:
  ExploreConfig cfg_;
};

/// Scenario-side wrapper: a kernel run that exhausts its step budget turns
/// the current path into a StepBudget partial.
inline RunOutcome run_or_stop(SimKernel& k, SimTime until) {
  RunOutcome r = k.run(until);
  if (r == RunOutcome::StepBudgetExhausted)
    throw PathStop{PathStatus::Partial, PartialReason::StepBudget};
  return r;
}

} // namespace symx
