// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/harness/report_io.hpp"

#include <fstream>

namespace symx::harness {

namespace {

ordered_json error_to_json(const ErrorRecord& e) {
  ordered_json j;
  j["kind"] = std::string(error_kind_name(e.kind));
  j["site"] = e.site;
  ordered_json w = ordered_json::object();
  for (const auto& [name, value] : e.witness) w[name] = value;
  j["witness"] = std::move(w);
  return j;
}

ErrorKind error_kind_from(const std::string& name) {
  for (ErrorKind k : {ErrorKind::AssertionFailure, ErrorKind::DivideByZero,
                      ErrorKind::Overshift, ErrorKind::OutOfBounds,
                      ErrorKind::Unreachable})
    if (name == error_kind_name(k)) return k;
  throw std::invalid_argument("unknown error kind '" + name + "'");
}

} // namespace

ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["test"] = r.test;
  j["paths_complete"] = r.paths_complete;
  j["paths_partial"] = r.paths_partial;
  j["paths_pruned"] = r.paths_pruned;
  j["frontier_remaining"] = r.frontier_remaining;
  j["time_s"] = r.time_s;
  j["solver_time_share"] = r.solver_time_share;
  j["queries"] = r.queries;
  j["array_cells"] = r.array_cells;
  ordered_json errs = ordered_json::array();
  for (const auto& e : r.errors) errs.push_back(error_to_json(e));
  j["errors"] = std::move(errs);
  ordered_json partial = ordered_json::object();
  for (const auto& [k, v] : r.partial_reasons) partial[k] = v;
  j["partial_reasons"] = std::move(partial);
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  return j;
}

Report report_from_json(const ordered_json& j) {
  Report r;
  r.test = j.at("test").get<std::string>();
  r.paths_complete = j.at("paths_complete").get<uint64_t>();
  r.paths_partial = j.at("paths_partial").get<uint64_t>();
  r.paths_pruned = j.at("paths_pruned").get<uint64_t>();
  r.frontier_remaining = j.at("frontier_remaining").get<uint64_t>();
  r.time_s = j.at("time_s").get<double>();
  r.solver_time_share = j.at("solver_time_share").get<double>();
  r.queries = j.at("queries").get<uint64_t>();
  r.array_cells = j.at("array_cells").get<uint64_t>();
  for (const auto& e : j.at("errors")) {
    ErrorRecord rec;
    rec.kind = error_kind_from(e.at("kind").get<std::string>());
    rec.site = e.at("site").get<std::string>();
    for (auto it = e.at("witness").begin(); it != e.at("witness").end(); ++it)
      rec.witness[it.key()] = it.value().get<uint64_t>();
    r.errors.push_back(std::move(rec));
  }
  for (auto it = j.at("partial_reasons").begin(); it != j.at("partial_reasons").end();
       ++it)
    r.partial_reasons[it.key()] = it.value().get<uint64_t>();
  for (auto it = j.at("config").begin(); it != j.at("config").end(); ++it)
    r.config[it.key()] = it.value().get<std::string>();
  return r;
}

ordered_json campaign_to_json(const CampaignResult& c) {
  ordered_json j;
  j["peripheral"] = c.peripheral;
  j["level"] = c.level;
  j["scenario_kind"] = c.scenario_kind;
  j["scenario"] = c.scenario;
  j["budget_s"] = c.budget_s;
  j["killed"] = c.killed;
  j["alive"] = c.alive;
  j["equivalent"] = c.equivalent;
  j["kill_rate_behavior_changing"] = c.kill_rate_behavior_changing();
  ordered_json ms = ordered_json::array();
  for (const auto& m : c.mutants) {
    ordered_json mj;
    mj["site"] = m.site;
    mj["original"] = m.original;
    mj["replacement"] = m.replacement;
    mj["outcome"] = m.outcome;
    if (!m.error_kind.empty()) mj["error_kind"] = m.error_kind;
    mj["time_s"] = m.time_s;
    mj["oracle_differs"] = m.oracle_differs;
    ms.push_back(std::move(mj));
  }
  j["mutants"] = std::move(ms);
  return j;
}

void emit_report(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace symx::harness
