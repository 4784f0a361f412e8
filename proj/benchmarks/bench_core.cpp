// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "symx/harness/scenario.hpp"
#include "symx/solver.hpp"
#include "symx/symarray.hpp"

using namespace symx;

namespace {

void BM_TermFoldChain(benchmark::State& state) {
  for (auto _ : state) {
    Term h = mk_const(32, 0x12345678);
    for (int r = 0; r < 64; ++r) {
      Term x = xor_(h, mk_const(32, 0xDEADBEEF));
      h = add(or_(shl(x, mk_const(32, 5)), lshr(x, mk_const(32, 27))),
              mk_const(32, r));
    }
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_TermFoldChain);

void BM_EvalHashDag(benchmark::State& state) {
  SymbolTable tab;
  Term a = tab.fresh("a", 32);
  Term b = tab.fresh("b", 32);
  Term h = mk_const(32, 0x12345678);
  for (int r = 0; r < 8; ++r) {
    Term x = xor_(h, a);
    h = add(or_(shl(x, mk_const(32, 5)), lshr(x, mk_const(32, 27))),
            add(b, mk_const(32, r)));
  }
  Assignment env{{a.symbol_id(), 123}, {b.symbol_id(), 456}};
  for (auto _ : state) benchmark::DoNotOptimize(eval(h, env));
}
BENCHMARK(BM_EvalHashDag);

void BM_BuiltinCheckSat(benchmark::State& state) {
  SymbolTable tab;
  Term a = tab.fresh("a", static_cast<unsigned>(state.range(0)));
  Term b = tab.fresh("b", static_cast<unsigned>(state.range(0)));
  PathCondition pc;
  pc.append(ult(a, b));
  pc.append(eq(and_(a, b), mk_const(static_cast<unsigned>(state.range(0)), 0)));
  BuiltinSolver slv;
  for (auto _ : state) {
    QueryResult r = slv.check_sat(pc, {});
    benchmark::DoNotOptimize(r.verdict);
  }
}
BENCHMARK(BM_BuiltinCheckSat)->Arg(4)->Arg(8)->Arg(10);

void BM_ReadRaw64(benchmark::State& state) {
  SymbolTable tab;
  Term alpha = tab.fresh("alpha", 8);
  SymArray arr = SymArray::make(8, 64, mk_const(8, 0));
  arr = array_write(arr, add(alpha, mk_const(8, 1)), mk_const(8, 7));
  for (auto _ : state) benchmark::DoNotOptimize(read_raw(arr, alpha));
}
BENCHMARK(BM_ReadRaw64);

void BM_ReadMin64(benchmark::State& state) {
  SymbolTable tab;
  Term alpha = tab.fresh("alpha", 8);
  SymArray arr = SymArray::make(8, 64, mk_const(8, 0));
  arr = array_write(arr, add(alpha, mk_const(8, 1)), mk_const(8, 7));
  BuiltinSolver slv;
  PathCondition pc;
  pc.append(ule(mk_const(8, 8), alpha));
  pc.append(ule(alpha, mk_const(8, 11)));
  for (auto _ : state) benchmark::DoNotOptimize(read_min(arr, alpha, pc, slv));
}
BENCHMARK(BM_ReadMin64);

void BM_KernelDeltaCycles(benchmark::State& state) {
  for (auto _ : state) {
    ConcreteContext ctx({});
    SimKernel k(ctx, 1u << 20);
    SignalId clk = k.make_clock("clk", 2, 50);
    uint64_t count = 0;
    ProcessId m = k.add_method("m", [&] { ++count; }, false);
    k.sensitive(m, clk, Edge::AnyChange);
    k.run(static_cast<SimTime>(state.range(0)));
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_KernelDeltaCycles)->Arg(256)->Arg(4096);

void BM_ExploreSignalForks(benchmark::State& state) {
  using namespace symx::harness;
  const Scenario* s = find_scenario("signal-two-writes");
  for (auto _ : state) {
    ExploreConfig cfg;
    auto r = run_scenario(*s, cfg, {});
    benchmark::DoNotOptimize(r.report.paths_complete);
  }
}
BENCHMARK(BM_ExploreSignalForks);

} // namespace

BENCHMARK_MAIN();
