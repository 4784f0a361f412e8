// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// Randomized read_min/read_raw equivalence checking, shared between the unit
// suite and the acceptance suite. Every model of a random path condition is
// enumerated; the two read forms must evaluate identically on each.

#pragma once

#include <random>

#include "support/oracles.hpp"
#include "symx/symarray.hpp"

namespace arraymin_prop {

struct Result {
  int instances = 0;
  int models_checked = 0;
  int violations = 0;
};

// Runs `instances` satisfiable random instances: arrays up to 16 cells,
// up to 3 symbolic updates, random interval/hole constraints on the index.
inline Result run(int instances, uint32_t seed) {
  using namespace symx;
  std::mt19937 rng(seed);
  Result res;

  while (res.instances < instances) {
    SymbolTable tab;
    Term alpha = tab.fresh("alpha", 4);
    Term beta = tab.fresh("beta", 4);
    Term gamma = tab.fresh("gamma", 4);

    size_t size = 2 + rng() % 15; // 2..16 cells
    SymArray arr = SymArray::make(4, size, mk_const(8, 0));
    for (size_t i = 0; i < size; ++i)
      arr.state[i] = mk_const(8, rng() & 0xFF);

    unsigned n_updates = rng() % 4;
    for (unsigned u = 0; u < n_updates; ++u) {
      Term idx;
      switch (rng() % 4) {
        case 0: idx = beta; break;
        case 1: idx = gamma; break;
        case 2: idx = add(beta, mk_const(4, rng() % 4)); break;
        default: idx = add(alpha, mk_const(4, 1 + rng() % 3)); break;
      }
      arr = array_write(arr, idx, mk_const(8, rng() & 0xFF));
      // Occasionally interleave a concrete write to exercise shadowing.
      if (rng() % 3 == 0)
        arr = array_write(arr, mk_const(4, rng() % size), mk_const(8, rng() & 0xFF));
    }

    PathCondition pc;
    uint64_t lo = rng() % size;
    uint64_t hi = lo + rng() % (size - lo);
    pc.append(ule(mk_const(4, lo), alpha));
    pc.append(ule(alpha, mk_const(4, hi)));
    if (rng() % 2) pc.append(ne(alpha, mk_const(4, lo + rng() % (hi - lo + 1))));
    if (rng() % 2) pc.append(ule(beta, mk_const(4, size - 1)));
    if (rng() % 3 == 0) pc.append(ule(gamma, mk_const(4, size - 1)));

    BuiltinSolver solver;
    if (solver.check_sat(pc, {}).verdict != Verdict::Sat) continue;

    MinimiseConfig cfg;
    cfg.literal_threshold = 1; // exercise minimisation on nearly every size
    Term raw = read_raw(arr, alpha);
    Term min = read_min(arr, alpha, pc, solver, cfg);
    ++res.instances;

    oracle::for_all_assignments(tab.symbols(), [&](const Assignment& env) {
      for (const auto& c : pc.constraints())
        if (oracle::interp(c, env) == 0) return true;
      ++res.models_checked;
      if (oracle::interp(raw, env) != oracle::interp(min, env)) ++res.violations;
      return true;
    });
  }
  return res;
}

} // namespace arraymin_prop
