// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symx/term.hpp"

namespace symx {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ordered, append-only conjunction of width-1 constraints.
class PathCondition {
public:
  void append(Term constraint);
  const std::vector<Term>& constraints() const { return constraints_; }
  size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }

private:
  std::vector<Term> constraints_;
};

enum class Verdict { Sat, Unsat, Unknown };

struct QueryResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Assignment> model; // present iff Sat and a model was asked for
  double elapsed_s = 0.0;
  std::string note; // diagnostic for Unknown
};

struct SolverStats {
  uint64_t query_count = 0;
  double total_solver_time_s = 0.0;
  uint64_t timeout_count = 0;
  // Array-literal cells contained in issued queries, the measured quantity
  // behind the minimisation size comparison.
  uint64_t array_cells = 0;
};

/// Deterministic SMT-LIB2 (v2.6, QF_ABV) script for the query. Shared
/// subterms become define-funs; array literals become store chains over an
/// unconstrained base array.
std::string serialize_query(const PathCondition& pc, std::span<const Term> extra,
                            bool want_model);

/// Count of array-literal cells referenced by the query (each distinct
/// literal node counted once per query).
uint64_t count_array_cells(const PathCondition& pc, std::span<const Term> extra);

class Solver {
public:
  virtual ~Solver() = default;

  /// Satisfiability of pc /\ extra. All terms must have width 1.
  QueryResult check_sat(const PathCondition& pc, std::span<const Term> extra,
                        bool want_model = false);
  QueryResult check_sat(const PathCondition& pc, std::initializer_list<Term> extra,
                        bool want_model = false) {
    return check_sat(pc, std::span<const Term>(extra.begin(), extra.size()), want_model);
  }

  /// May t equal v under pc? Unknown counts as "may" so that callers relying
  /// on over-approximation stay sound.
  bool may_equal(const Term& t, const Term& v, const PathCondition& pc);

  /// Least / greatest value of t under pc via binary search; at most
  /// width+1 queries. nullopt when a sub-query came back Unknown.
  /// Throws SolverError on an unsatisfiable pc.
  std::optional<uint64_t> solve_min(const Term& t, const PathCondition& pc);
  std::optional<uint64_t> solve_max(const Term& t, const PathCondition& pc);

  const SolverStats& stats() const { return stats_; }
  double timeout_s() const { return timeout_s_; }
  void set_timeout_s(double s) { timeout_s_ = s; }

protected:
  virtual QueryResult do_check_sat(const PathCondition& pc,
                                   std::span<const Term> extra, bool want_model) = 0;

  SolverStats stats_;
  double timeout_s_ = 10.0;
};

/// Exhaustive enumeration over the symbols' Cartesian product. Ground truth
/// at desk scale; refuses queries whose symbols exceed max_bits total
/// (Unknown). Models are the lexicographically least satisfying assignment
/// in symbol-id order.
class BuiltinSolver : public Solver {
public:
  explicit BuiltinSolver(unsigned max_bits = 20) : max_bits_(max_bits) {}

protected:
  QueryResult do_check_sat(const PathCondition& pc, std::span<const Term> extra,
                           bool want_model) override;

private:
  unsigned max_bits_;
};

/// One-shot SMT-LIB2 process backend: the script goes to stdin, the verdict
/// and optional model come back on stdout. The command is split on spaces.
class ExternalSolver : public Solver {
public:
  explicit ExternalSolver(std::string command) : command_(std::move(command)) {}
  const std::string& command() const { return command_; }

protected:
  QueryResult do_check_sat(const PathCondition& pc, std::span<const Term> extra,
                           bool want_model) override;

private:
  std::string command_;
};

std::unique_ptr<Solver> make_builtin_solver(unsigned max_bits = 20);
std::unique_ptr<Solver> make_external_solver(std::string command);

} // namespace symx
