// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "symx/solver.hpp"
#include "symx/term.hpp"

namespace symx {

/// Dual representation of a byte-addressed memory object: a concrete-index
/// cell store plus an ordered list of symbolic-index updates. A value type;
/// writes return the updated object and leave prior views intact.
struct SymArray {
  uint64_t base_address = 0;
  unsigned index_width = 8;
  std::vector<Term> state;                       // width-8 cells, one per byte
  std::vector<std::pair<Term, Term>> updates;    // (index, value), index non-Const

  size_t size() const { return state.size(); }

  static SymArray make(unsigned index_width, size_t size, const Term& init_byte);
};

/// Clipped view used to build reduced solver queries: the state slice
/// [slice_begin, slice_end) together with the updates that may alias the
/// access index. Over-approximates; never drops a feasible cell or update.
struct MinimisedView {
  uint64_t alpha_min = 0;
  uint64_t alpha_max = 0;
  size_t slice_begin = 0;
  size_t slice_end = 0;
  std::vector<std::pair<Term, Term>> u_min;
};

struct MinimiseConfig {
  bool enabled = true;
  // Raw literals at or below this cell count are already cheap; reads fall
  // through to read_raw without spending extremum queries.
  size_t literal_threshold = 8;
};

/// Concrete-index writes replace the state cell; symbolic-index writes are
/// appended to the update list. Throws std::out_of_range for a concrete
/// index past the end (engine-level callers bound-check first).
SymArray array_write(SymArray arr, const Term& index, const Term& value);

/// Unminimised read: select over the store chain over the full state
/// literal. Concrete index with no updates short-circuits to the cell.
/// Out-of-range index values are the caller's to exclude via the path
/// condition.
Term read_raw(const SymArray& arr, const Term& index);

/// Extremum-clip the state and filter updates by may-alias. nullopt when an
/// extremum came back unresolved (solver Unknown) or the clipped slice is
/// empty; callers fall back to read_raw. Throws SolverError on an
/// unsatisfiable path condition.
std::optional<MinimisedView> minimise(const SymArray& arr, const Term& index,
                                      const PathCondition& pc, Solver& solver);

/// Minimised read: like read_raw but over the clipped slice, re-based so the
/// select index is index - alpha_min. Semantically equal to read_raw under
/// the path condition; degrades to read_raw whenever minimise declines.
Term read_min(const SymArray& arr, const Term& index, const PathCondition& pc,
              Solver& solver, const MinimiseConfig& cfg = {});

} // namespace symx
