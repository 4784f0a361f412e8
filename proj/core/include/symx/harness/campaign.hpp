// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symx/harness/scenario.hpp"

namespace symx::harness {

struct MutantResult {
  std::string site;
  std::string original;
  std::string replacement;
  std::string outcome;   // Killed | Alive | Equivalent
  std::string error_kind; // first error kind when Killed
  double time_s = 0.0;
  bool oracle_differs = false;
};

struct CampaignResult {
  std::string peripheral;
  std::string level;
  std::string scenario_kind; // standalone | cross
  std::string scenario;
  double budget_s = 0.0;
  uint64_t killed = 0;
  uint64_t alive = 0;
  uint64_t equivalent = 0;
  std::vector<MutantResult> mutants;

  uint64_t total() const { return killed + alive + equivalent; }
  // Kill rate over oracle-confirmed behavior-changing mutants.
  double kill_rate_behavior_changing() const;
};

/// Single-operator same-class mutation campaign over one peripheral level:
/// the unmutated baseline must pass (fix-before-mutate), its run discovers
/// the site catalog, each mutant explores with abort-on-first-error under
/// the budget, and the concrete differential oracle separates equivalent
/// mutants from misses. base_opts carries bug/order settings; a baseline
/// that reports errors refuses the campaign.
CampaignResult run_campaign(const std::string& peripheral, const std::string& level,
                            const std::string& scenario_kind, double budget_s,
                            ExploreConfig base_cfg, ScenarioOptions base_opts = {});

/// The scenario a campaign of the given kind uses for this peripheral/level.
const Scenario* campaign_scenario(const std::string& peripheral,
                                  const std::string& level,
                                  const std::string& scenario_kind);

} // namespace symx::harness
