// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <string>

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symx/harness/campaign.hpp"
#include "symx/harness/regmaps.hpp"
#include "symx/harness/report_io.hpp"
#include "symx/harness/scenario.hpp"
#include "symx/smtparse.hpp"

namespace {

using namespace symx;
using namespace symx::harness;

constexpr int kExitOk = 0;
constexpr int kExitDuvErrors = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudgetEmpty = 3;

void print_scenarios() {
  std::printf("scenarios:\n");
  for (const auto& s : scenarios())
    std::printf("  %-24s %-15s %-7s %s\n", s.name.c_str(), s.kind.c_str(),
                s.peripheral.c_str(), s.description.c_str());
}

void print_bugs() {
  std::printf("bug variants (off by default, enable with --bug):\n");
  for (const auto& b : BugSet::known()) std::printf("  %s\n", b.c_str());
}

void print_sites() {
  std::printf("mutation sites (discovered from one concrete baseline run):\n");
  for (const std::string p : {"gcd", "hash", "map", "plic"}) {
    for (const std::string lvl : {"rtl", "tlm"}) {
      const Scenario* s = campaign_scenario(p, lvl, "standalone");
      if (!s) continue;
      MutationTable table;
      ScenarioOptions opts;
      opts.mutations = &table;
      OracleDomain dom = s->oracle_domain();
      if (dom.empty()) continue;
      run_concrete(*s, opts, dom.front());
      for (const auto& site : table.catalog()) {
        if (site.level != lvl) continue;
        std::printf("  %-28s %-5s (%zu same-class alternatives)\n",
                    site.site_id.c_str(), std::string(op_name(site.original)).c_str(),
                    mutation_alternatives(site.original).size());
      }
    }
  }
}

void print_registers() {
  std::printf("register maps:\n%s", register_maps_text().c_str());
}

int cmd_run(const std::string& scenario_name, ExploreConfig cfg,
            const std::string& bug, const std::string& cross_order,
            const std::string& report_path) {
  const Scenario* s = find_scenario(scenario_name);
  if (!s) {
    std::fprintf(stderr, "unknown scenario '%s' (see `symx list`)\n",
                 scenario_name.c_str());
    return kExitUsage;
  }
  ScenarioOptions opts;
  opts.cross_order = cross_order;
  if (!bug.empty()) {
    const auto& known = BugSet::known();
    if (std::find(known.begin(), known.end(), bug) == known.end()) {
      std::fprintf(stderr, "unknown bug variant '%s'\n", bug.c_str());
      return kExitUsage;
    }
    opts.bugs = BugSet({bug});
  }

  ExploreResult res = run_scenario(*s, cfg, opts);
  const Report& r = res.report;
  std::printf("%s: complete=%llu partial=%llu pruned=%llu frontier=%llu "
              "queries=%llu solver=%.0f%% time=%.2fs errors=%zu\n",
              r.test.c_str(), (unsigned long long)r.paths_complete,
              (unsigned long long)r.paths_partial,
              (unsigned long long)r.paths_pruned,
              (unsigned long long)r.frontier_remaining,
              (unsigned long long)r.queries, 100.0 * r.solver_time_share, r.time_s,
              r.errors.size());
  for (const auto& e : r.errors) {
    std::printf("  %s at %s, witness:", std::string(error_kind_name(e.kind)).c_str(),
                e.site.c_str());
    for (const auto& [name, value] : e.witness)
      std::printf(" %s=%llu", name.c_str(), (unsigned long long)value);
    std::printf("\n");
  }
  for (const auto& [reason, count] : r.partial_reasons)
    std::printf("  partial: %s x%llu\n", reason.c_str(), (unsigned long long)count);

  if (!report_path.empty()) emit_report(report_to_json(r), report_path);

  if (!r.errors.empty()) return kExitDuvErrors;
  if (r.paths_complete == 0 && (r.paths_partial > 0 || r.frontier_remaining > 0))
    return kExitBudgetEmpty;
  return kExitOk;
}

int cmd_mutate(const std::string& peripheral, const std::string& level,
               const std::string& kind, double budget_s, ExploreConfig cfg,
               const std::string& report_path) {
  CampaignResult c = run_campaign(peripheral, level, kind, budget_s, cfg);
  std::printf("%s %s %s: mutants=%llu killed=%llu alive=%llu equivalent=%llu "
              "kill-rate(behavior-changing)=%.2f%%\n",
              c.peripheral.c_str(), c.level.c_str(), c.scenario_kind.c_str(),
              (unsigned long long)c.total(), (unsigned long long)c.killed,
              (unsigned long long)c.alive, (unsigned long long)c.equivalent,
              100.0 * c.kill_rate_behavior_changing());
  for (const auto& m : c.mutants)
    std::printf("  %-28s %-5s->%-5s %-10s %s%.2fs\n", m.site.c_str(),
                m.original.c_str(), m.replacement.c_str(), m.outcome.c_str(),
                m.error_kind.empty() ? "" : (m.error_kind + " ").c_str(), m.time_s);
  if (!report_path.empty()) emit_report(campaign_to_json(c), report_path);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic exploration of RTL/TLM peripheral models"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "scenarios, peripherals, sites, bugs");
  bool list_sites = false, list_regs = false;
  list->add_flag("--sites", list_sites, "include mutation sites");
  list->add_flag("--registers", list_regs, "include register maps");

  auto* run = app.add_subcommand("run", "explore one scenario");
  std::string scenario_name, bug, solver = "builtin", report_path;
  std::string array_min = "on", cross_order = "tlm-first";
  double timeout_s = 300.0, solver_timeout_s = 10.0;
  uint64_t step_budget = 0;
  run->add_option("scenario", scenario_name, "scenario name")->required();
  run->add_option("--timeout-s", timeout_s, "overall exploration budget");
  run->add_option("--solver-timeout-s", solver_timeout_s, "per-query budget");
  run->add_option("--array-min", array_min, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--solver", solver, "builtin or external:<command>");
  run->add_option("--step-budget", step_budget,
                  "kernel activations per path (default: per scenario)");
  run->add_option("--bug", bug, "activate a seeded bug variant");
  run->add_option("--report", report_path, "write the report to this path");
  run->add_option("--cross-order", cross_order, "tlm-first|rtl-first")
      ->check(CLI::IsMember({"tlm-first", "rtl-first"}));

  auto* smt = app.add_subcommand(
      "smt", "evaluate an SMT-LIB2 script from stdin with the built-in backend");

  auto* mutate = app.add_subcommand("mutate", "run a mutation campaign");
  std::string m_peripheral, m_level, m_kind, m_report;
  double budget_s = 120.0;
  mutate->add_option("peripheral", m_peripheral, "gcd|hash|map|plic")->required();
  mutate->add_option("level", m_level, "rtl|tlm")->required();
  mutate->add_option("kind", m_kind, "standalone|cross")->required();
  mutate->add_option("--budget-s", budget_s, "per-mutant budget");
  mutate->add_option("--report", m_report, "write the campaign result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) {
      print_scenarios();
      print_bugs();
      if (list_sites) print_sites();
      if (list_regs) print_registers();
      return kExitOk;
    }
    if (run->parsed()) {
      ExploreConfig cfg;
      cfg.overall_timeout_s = timeout_s;
      cfg.solver_timeout_s = solver_timeout_s;
      cfg.array_min = array_min == "on";
      cfg.solver = solver;
      if (step_budget) cfg.step_budget = step_budget;
      return cmd_run(scenario_name, cfg, bug, cross_order, report_path);
    }
    if (smt->parsed()) {
      std::ostringstream in;
      in << std::cin.rdbuf();
      std::printf("%s", run_smt_script(in.str()).c_str());
      return kExitOk;
    }
    if (mutate->parsed()) {
      ExploreConfig cfg;
      cfg.overall_timeout_s = budget_s;
      return cmd_mutate(m_peripheral, m_level, m_kind, budget_s, cfg, m_report);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
