// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/harness/campaign.hpp"

#include <chrono>

namespace symx::harness {

namespace {

bool same_outcome(const ConcreteContext::Outcome& a,
                  const ConcreteContext::Outcome& b) {
  if (a.completed != b.completed || a.pruned != b.pruned) return false;
  if (a.observables != b.observables) return false;
  if (a.errors.size() != b.errors.size()) return false;
  for (size_t i = 0; i < a.errors.size(); ++i)
    if (a.errors[i].kind != b.errors[i].kind || a.errors[i].site != b.errors[i].site)
      return false;
  return true;
}

} // namespace

double CampaignResult::kill_rate_behavior_changing() const {
  uint64_t changing = 0, changing_killed = 0;
  for (const auto& m : mutants) {
    bool behavior_changing = m.oracle_differs || m.outcome == "Killed";
    if (!behavior_changing) continue;
    ++changing;
    if (m.outcome == "Killed") ++changing_killed;
  }
  return changing == 0 ? 1.0 : static_cast<double>(changing_killed) / changing;
}

const Scenario* campaign_scenario(const std::string& peripheral,
                                  const std::string& level,
                                  const std::string& scenario_kind) {
  std::string name;
  if (scenario_kind == "cross") {
    if (peripheral == "gcd")
      name = "gcd-cross-4bit";
    else
      name = peripheral + "-cross";
  } else if (scenario_kind == "standalone") {
    name = peripheral + "-" + level + "-standalone";
  } else {
    return nullptr;
  }
  return find_scenario(name);
}

CampaignResult run_campaign(const std::string& peripheral, const std::string& level,
                            const std::string& scenario_kind, double budget_s,
                            ExploreConfig base_cfg, ScenarioOptions base_opts) {
  const Scenario* scen = campaign_scenario(peripheral, level, scenario_kind);
  if (!scen)
    throw ConfigError("no campaign scenario for " + peripheral + "/" + level + "/" +
                      scenario_kind);
  if (level != "rtl" && level != "tlm")
    throw ConfigError("level must be rtl or tlm");
  if (budget_s <= 0) throw ConfigError("budget must be positive");

  CampaignResult result;
  result.peripheral = peripheral;
  result.level = level;
  result.scenario_kind = scenario_kind;
  result.scenario = scen->name;
  result.budget_s = budget_s;

  // Fix-before-mutate: the baseline must be clean; its exploration also
  // discovers the mutation-site catalog.
  MutationTable table;
  ScenarioOptions opts = std::move(base_opts);
  opts.mutations = &table;

  ExploreConfig baseline_cfg = base_cfg;
  baseline_cfg.overall_timeout_s = budget_s;
  ExploreResult baseline = run_scenario(*scen, baseline_cfg, opts);
  if (!baseline.report.errors.empty())
    throw ConfigError("baseline scenario '" + scen->name +
                      "' reports errors; fix before mutating");

  // Concrete baseline outcomes over the scenario's oracle domain.
  OracleDomain domain = scen->oracle_domain();
  if (domain.empty())
    throw ConfigError("scenario '" + scen->name + "' has no oracle domain");
  std::vector<ConcreteContext::Outcome> base_outcomes;
  base_outcomes.reserve(domain.size());
  for (const auto& inputs : domain)
    base_outcomes.push_back(run_concrete(*scen, opts, inputs));

  // Enumerate single-site same-class mutants of the requested level.
  std::vector<MutationSite> sites = table.catalog();
  for (const auto& site : sites) {
    if (site.level != level || site.peripheral != peripheral) continue;
    for (OpTag alt : mutation_alternatives(site.original)) {
      MutantResult mr;
      mr.site = site.site_id;
      mr.original = std::string(op_name(site.original));
      mr.replacement = std::string(op_name(alt));

      table.set_mutation(site.site_id, alt);
      auto t0 = std::chrono::steady_clock::now();

      ExploreConfig mcfg = base_cfg;
      mcfg.overall_timeout_s = budget_s;
      mcfg.stop_on_first_error = true;
      ExploreResult res = run_scenario(*scen, mcfg, opts);
      mr.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();

      // Concrete differential: does the mutant behave differently anywhere
      // in the domain?
      for (size_t i = 0; i < domain.size(); ++i) {
        if (!same_outcome(base_outcomes[i], run_concrete(*scen, opts, domain[i]))) {
          mr.oracle_differs = true;
          break;
        }
      }

      if (!res.report.errors.empty()) {
        mr.outcome = "Killed";
        mr.error_kind = std::string(error_kind_name(res.report.errors[0].kind));
        ++result.killed;
      } else if (mr.oracle_differs) {
        mr.outcome = "Alive";
        ++result.alive;
      } else {
        mr.outcome = "Equivalent";
        ++result.equivalent;
      }
      table.clear_mutation();
      result.mutants.push_back(std::move(mr));
    }
  }
  return result;
}

} // namespace symx::harness
