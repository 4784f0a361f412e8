// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/symarray.hpp"

#include <stdexcept>

namespace symx {

SymArray SymArray::make(unsigned index_width, size_t size, const Term& init_byte) {
  if (size == 0) throw std::invalid_argument("SymArray: zero size");
  if (index_width < 1 || index_width > kMaxWidth)
    throw std::invalid_argument("SymArray: bad index width");
  if (index_width < 64 && size > (uint64_t{1} << index_width))
    throw std::invalid_argument("SymArray: index width does not cover size");
  if (!init_byte.valid() || init_byte.width() != 8)
    throw std::invalid_argument("SymArray: init byte must be width 8");
  SymArray arr;
  arr.index_width = index_width;
  arr.state.assign(size, init_byte);
  return arr;
}

SymArray array_write(SymArray arr, const Term& index, const Term& value) {
  if (!index.valid() || index.width() != arr.index_width)
    throw std::invalid_argument("array_write: index width mismatch");
  if (!value.valid() || value.width() != 8)
    throw std::invalid_argument("array_write: value must be width 8");
  if (index.is_const()) {
    uint64_t i = index.const_value();
    if (i >= arr.state.size())
      throw std::out_of_range("array_write: concrete index out of bounds");
    arr.state[i] = value;
    // Earlier symbolic updates sit outside the state in the store chain, so
    // a concrete write has to shadow them where they alias its index or
    // program order would be lost.
    for (auto& [ui, uv] : arr.updates) uv = ite(eq(ui, index), value, uv);
  } else {
    arr.updates.emplace_back(index, value);
  }
  return arr;
}

Term read_raw(const SymArray& arr, const Term& index) {
  if (!index.valid() || index.width() != arr.index_width)
    throw std::invalid_argument("read_raw: index width mismatch");
  if (index.is_const() && arr.updates.empty()) {
    uint64_t i = index.const_value();
    if (i >= arr.state.size())
      throw std::out_of_range("read_raw: concrete index out of bounds");
    return arr.state[i];
  }
  Term a = mk_array(arr.index_width, arr.state);
  for (const auto& [ui, uv] : arr.updates) a = mk_store(a, ui, uv);
  return mk_select(a, index);
}

std::optional<MinimisedView> minimise(const SymArray& arr, const Term& index,
                                      const PathCondition& pc, Solver& solver) {
  auto amin = solver.solve_min(index, pc);
  if (!amin) return std::nullopt;
  auto amax = solver.solve_max(index, pc);
  if (!amax) return std::nullopt;

  MinimisedView view;
  view.alpha_min = *amin;
  view.alpha_max = *amax;
  view.slice_begin = std::min<uint64_t>(*amin, arr.state.size());
  view.slice_end = std::min<uint64_t>(*amax + 1, arr.state.size());
  if (view.slice_begin >= view.slice_end) return std::nullopt;

  for (const auto& u : arr.updates)
    if (solver.may_equal(index, u.first, pc)) view.u_min.push_back(u);
  return view;
}

Term read_min(const SymArray& arr, const Term& index, const PathCondition& pc,
              Solver& solver, const MinimiseConfig& cfg) {
  if (index.is_const() && arr.updates.empty()) return read_raw(arr, index);
  if (!cfg.enabled || arr.state.size() <= cfg.literal_threshold)
    return read_raw(arr, index);

  std::optional<MinimisedView> view = minimise(arr, index, pc, solver);
  if (!view) return read_raw(arr, index);

  std::vector<Term> cells(arr.state.begin() + view->slice_begin,
                          arr.state.begin() + view->slice_end);
  Term rebase = mk_const(arr.index_width, view->slice_begin);
  Term a = mk_array(arr.index_width, std::move(cells));
  for (const auto& [ui, uv] : view->u_min)
    a = mk_store(a, view->slice_begin ? sub(ui, rebase) : ui, uv);
  return mk_select(a, view->slice_begin ? sub(index, rebase) : index);
}

} // namespace symx
