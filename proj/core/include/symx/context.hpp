// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "symx/report.hpp"
#include "symx/symarray.hpp"
#include "symx/term.hpp"

namespace symx {

/// Raised to unwind a test body when its path stops early (pruned
/// assumption, budget, terminal error). Carriers catch it at the run loop.
struct PathStop {
  PathStatus status;
  PartialReason reason = PartialReason::OverallTimeout;
};

class ContextError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The surface a test body and the DUVs program against. One implementation
/// explores symbolically (engine), the other replays a concrete assignment
/// (oracles, co-simulation, mutant classification).
class ExecutionContext {
public:
  virtual ~ExecutionContext() = default;

  virtual Term make_symbol(const std::string& name, unsigned width) = 0;

  /// Returns the side taken on the current path; may fork.
  virtual bool branch(const Term& cond) = 0;

  virtual void assume(const Term& cond) = 0;

  virtual void check_assert(const Term& cond, const std::string& site) = 0;

  /// Guarded operations: record an error record for the feasible bad side
  /// and continue under the guard.
  virtual Term checked_div(const Term& a, const Term& b, const std::string& site) = 0;
  virtual Term checked_rem(const Term& a, const Term& b, const std::string& site) = 0;
  virtual Term checked_shift(OpTag tag, const Term& a, const Term& amount,
                             const std::string& site) = 0;

  /// Bounds guard for byte stores at possibly-symbolic indices.
  virtual void checked_bound(const Term& index, uint64_t size,
                             const std::string& site) = 0;

  /// Read dispatch: raw or minimised per engine configuration.
  virtual Term array_read(const SymArray& arr, const Term& index) = 0;

  /// Record a named result term for later oracle comparison.
  virtual void observe(const std::string& name, const Term& value) = 0;

  /// Marks a spot control flow must never reach; reaching it records an
  /// Unreachable error with a witness and ends the path.
  virtual void unreachable(const std::string& site) = 0;
};

/// Replays a test body on one concrete input assignment: symbols fold to
/// constants, branches must decide concretely, guards evaluate directly.
class ConcreteContext final : public ExecutionContext {
public:
  struct Outcome {
    bool completed = false;
    bool pruned = false;
    std::vector<ErrorRecord> errors;
    std::map<std::string, uint64_t> observables;
  };

  explicit ConcreteContext(std::map<std::string, uint64_t> inputs,
                           uint64_t op_budget = 50000)
      : inputs_(std::move(inputs)), op_budget_(op_budget) {}

  Term make_symbol(const std::string& name, unsigned width) override;
  bool branch(const Term& cond) override;
  void assume(const Term& cond) override;
  void check_assert(const Term& cond, const std::string& site) override;
  Term checked_div(const Term& a, const Term& b, const std::string& site) override;
  Term checked_rem(const Term& a, const Term& b, const std::string& site) override;
  Term checked_shift(OpTag tag, const Term& a, const Term& amount,
                     const std::string& site) override;
  void checked_bound(const Term& index, uint64_t size,
                     const std::string& site) override;
  Term array_read(const SymArray& arr, const Term& index) override;
  void observe(const std::string& name, const Term& value) override;
  void unreachable(const std::string& site) override;

  const Outcome& outcome() const { return outcome_; }
  void mark_completed() { outcome_.completed = true; }

private:
  uint64_t concrete(const Term& t, const char* what) const;
  [[noreturn]] void fail(ErrorKind kind, const std::string& site);
  void charge_op();

  std::map<std::string, uint64_t> inputs_;
  uint64_t op_budget_;
  uint64_t ops_ = 0;
  Outcome outcome_;
};

} // namespace symx
