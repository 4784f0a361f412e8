// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "symx/duv/bus.hpp"
#include "symx/duv/mutation.hpp"
#include "symx/duv/regfile.hpp"
#include "symx/engine.hpp"

namespace symx::harness {

struct ScenarioOptions {
  BugSet bugs;
  MutationTable* mutations = nullptr;
  // Cross-level execution order; the order can decide which forks the BFS
  // meets first.
  std::string cross_order = "tlm-first";
  uint64_t step_budget = 100000;
};

using ScenarioBody = std::function<void(ExecutionContext&, const ScenarioOptions&)>;
using OracleDomain = std::vector<std::map<std::string, uint64_t>>;

struct Scenario {
  std::string name;
  std::string kind; // standalone-rtl | standalone-tlm | cross-level |
                    // iface-read | iface-write | micro
  std::string peripheral; // gcd | hash | map | plic | signal
  std::string description;
  ScenarioBody body;
  std::function<OracleDomain()> oracle_domain;
  uint64_t default_step_budget = 100000;
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(const std::string& name);

/// Explore a scenario under the given configuration. The engine step budget
/// is threaded into the scenario's kernel construction.
ExploreResult run_scenario(const Scenario& s, ExploreConfig cfg,
                           ScenarioOptions opts);

/// Replay a scenario on one concrete input assignment.
ConcreteContext::Outcome run_concrete(const Scenario& s, const ScenarioOptions& opts,
                                      const std::map<std::string, uint64_t>& inputs);

// Input injection helpers for the communication/functionality test split:
// direct register injection bypasses the interfaces entirely.
void inject_direct(RegisterFile& regs, const std::string& reg, const Term& value);

} // namespace symx::harness
