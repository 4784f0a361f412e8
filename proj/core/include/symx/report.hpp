// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symx/solver.hpp"
#include "symx/term.hpp"

namespace symx {

enum class ErrorKind : uint8_t {
  AssertionFailure,
  DivideByZero,
  Overshift,
  OutOfBounds,
  Unreachable,
};

std::string_view error_kind_name(ErrorKind k);

struct ErrorRecord {
  ErrorKind kind;
  std::string site;
  // Concrete assignment to every symbol of the test, keyed by name.
  std::map<std::string, uint64_t> witness;
};

enum class PartialReason : uint8_t {
  OverallTimeout,
  SolverTimeout,
  StepBudget,
  MemoryBudget,
  QueueBudget,
};

std::string_view partial_reason_name(PartialReason r);

enum class PathStatus : uint8_t { Running, Complete, Partial, Errored, Pruned };

/// Outcome of one explored path, kept for oracle-style checks. The decision
/// trace doubles as the re-execution seed.
struct PathSummary {
  std::vector<bool> trace;
  PathStatus status = PathStatus::Running;
  PartialReason partial_reason = PartialReason::OverallTimeout;
  std::optional<ErrorRecord> error;
  PathCondition pc;
  std::map<std::string, Term> observables;
  std::vector<SymbolInfo> symbols;
  // This path's slice of the solver statistics.
  uint64_t queries = 0;
  double solver_time_s = 0.0;
};

/// Per-test statistics in the shape the report files use.
struct Report {
  std::string test;
  uint64_t paths_complete = 0;
  uint64_t paths_partial = 0;
  uint64_t paths_pruned = 0;
  uint64_t frontier_remaining = 0;
  double time_s = 0.0;
  double solver_time_share = 0.0;
  uint64_t queries = 0;
  std::vector<ErrorRecord> errors;
  std::map<std::string, std::string> config;
  std::map<std::string, uint64_t> partial_reasons;
  uint64_t array_cells = 0;
};

} // namespace symx
