// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "symx/solver.hpp"

using namespace symx;

TEST_CASE("check_sat single equality") {
  SymbolTable tab;
  Term a = tab.fresh("a", 8);
  BuiltinSolver slv;
  PathCondition pc;

  QueryResult r = slv.check_sat(pc, {eq(a, mk_const(8, 3))}, true);
  CHECK(r.verdict == Verdict::Sat);
  REQUIRE(r.model.has_value());
  CHECK(r.model->at(a.symbol_id()) == 3);
}

TEST_CASE("check_sat contradiction") {
  SymbolTable tab;
  Term a = tab.fresh("a", 8);
  BuiltinSolver slv;
  PathCondition pc;
  pc.append(ult(a, mk_const(8, 2)));
  QueryResult r = slv.check_sat(pc, {eq(a, mk_const(8, 5))});
  CHECK(r.verdict == Verdict::Unsat);
}

TEST_CASE("check_sat xor model verified by substitution") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  Term b = tab.fresh("b", 4);
  BuiltinSolver slv;
  PathCondition pc;
  pc.append(eq(xor_(a, b), mk_const(4, 0xF)));
  QueryResult r = slv.check_sat(pc, {}, true);
  REQUIRE(r.verdict == Verdict::Sat);
  REQUIRE(r.model.has_value());
  CHECK(eval(xor_(a, b), *r.model) == 0xF);
}

TEST_CASE("model determinism: lexicographically least") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  Term b = tab.fresh("b", 4);
  BuiltinSolver slv;
  PathCondition pc;
  pc.append(ult(a, b));
  QueryResult r = slv.check_sat(pc, {}, true);
  REQUIRE(r.verdict == Verdict::Sat);
  CHECK(r.model->at(a.symbol_id()) == 0);
  CHECK(r.model->at(b.symbol_id()) == 1);
}

TEST_CASE("may_equal") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  BuiltinSolver slv;
  PathCondition pc;
  pc.append(ult(a, mk_const(4, 3)));
  CHECK(slv.may_equal(a, mk_const(4, 2), pc));
  CHECK(!slv.may_equal(a, mk_const(4, 7), pc));
  CHECK_THROWS_AS(slv.may_equal(a, mk_const(8, 2), pc), SolverError);
}

TEST_CASE("solve_min / solve_max") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  BuiltinSolver slv;

  SUBCASE("bounded range") {
    PathCondition pc;
    pc.append(ule(mk_const(4, 3), a));
    pc.append(ule(a, mk_const(4, 6)));
    CHECK(slv.solve_min(a, pc).value() == 3);
    CHECK(slv.solve_max(a, pc).value() == 6);
  }

  SUBCASE("constant term") {
    PathCondition pc;
    Term c = mk_const(8, 42);
    CHECK(slv.solve_min(c, pc).value() == 42);
    CHECK(slv.solve_max(c, pc).value() == 42);
  }

  SUBCASE("wraparound forces zero") {
    PathCondition pc;
    pc.append(eq(a, mk_const(4, 15)));
    Term t = add(a, mk_const(4, 1));
    CHECK(slv.solve_min(t, pc).value() == 0);
    CHECK(slv.solve_max(t, pc).value() == 0);
  }

  SUBCASE("dead path errors") {
    PathCondition pc;
    pc.append(mk_const(1, 0));
    CHECK_THROWS_AS(slv.solve_min(a, pc), SolverError);
  }

  SUBCASE("query budget is width+1 per extremum") {
    PathCondition pc;
    pc.append(ule(a, mk_const(4, 9)));
    uint64_t before = slv.stats().query_count;
    (void)slv.solve_min(a, pc);
    CHECK(slv.stats().query_count - before <= 4 + 1);
    before = slv.stats().query_count;
    (void)slv.solve_max(a, pc);
    CHECK(slv.stats().query_count - before <= 4 + 1);
  }
}

TEST_CASE("solve_min/solve_max bracket every model") {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    SymbolTable tab;
    Term a = tab.fresh("a", 4);
    Term b = tab.fresh("b", 4);
    BuiltinSolver slv;
    PathCondition pc;
    // Random interval constraints plus one relation between a and b.
    pc.append(ule(mk_const(4, rng() % 8), a));
    pc.append(ule(a, mk_const(4, 8 + rng() % 8)));
    static const OpTag rels[] = {OpTag::Ult, OpTag::Ule, OpTag::Eq, OpTag::Ne};
    pc.append(apply(rels[rng() % 4], {b, a}));

    Term t = (rng() % 2) ? a : add(a, b);
    QueryResult r = slv.check_sat(pc, {}, true);
    if (r.verdict != Verdict::Sat) continue;
    auto mn = slv.solve_min(t, pc);
    auto mx = slv.solve_max(t, pc);
    REQUIRE(mn.has_value());
    REQUIRE(mx.has_value());
    uint64_t v = eval(t, *r.model);
    CHECK(*mn <= v);
    CHECK(v <= *mx);
  }
}

TEST_CASE("enumeration budget refusal is Unknown") {
  SymbolTable tab;
  Term a = tab.fresh("a", 16);
  Term b = tab.fresh("b", 16);
  BuiltinSolver slv(20);
  PathCondition pc;
  pc.append(eq(add(a, b), mk_const(16, 1)));
  QueryResult r = slv.check_sat(pc, {});
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.note.find("budget") != std::string::npos);
}

TEST_CASE("per-query timeout honored within 1s") {
  SymbolTable tab;
  Term a = tab.fresh("a", 10);
  Term b = tab.fresh("b", 10);
  BuiltinSolver slv;
  slv.set_timeout_s(0.0); // expire immediately
  PathCondition pc;
  // Unsatisfiable, so the full 2^20 space would otherwise be enumerated.
  pc.append(ult(add(a, b), a));
  pc.append(ult(a, b));
  pc.append(eq(a, b));
  QueryResult r = slv.check_sat(pc, {});
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.elapsed_s <= 1.0);
  CHECK(slv.stats().timeout_count >= 1);
}

TEST_CASE("stats are monotone") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  BuiltinSolver slv;
  PathCondition pc;
  SolverStats s0 = slv.stats();
  (void)slv.check_sat(pc, {eq(a, mk_const(4, 1))});
  SolverStats s1 = slv.stats();
  CHECK(s1.query_count == s0.query_count + 1);
  CHECK(s1.total_solver_time_s >= s0.total_solver_time_s);
  (void)slv.check_sat(pc, {eq(a, mk_const(4, 2))});
  CHECK(slv.stats().query_count == s1.query_count + 1);
}

TEST_CASE("serialize_query format") {
  SymbolTable tab;
  Term a = tab.fresh("a", 8);
  PathCondition pc;

  SUBCASE("single equality matches the documented shape") {
    std::string s = serialize_query(pc, std::vector<Term>{eq(a, mk_const(8, 3))}, false);
    CHECK(s.find("(set-logic QF_ABV)") != std::string::npos);
    CHECK(s.find("(declare-fun a () (_ BitVec 8))") != std::string::npos);
    CHECK(s.find("(assert (= a #x03))") != std::string::npos);
    CHECK(s.find("(check-sat)") != std::string::npos);
  }

  SUBCASE("empty query") {
    std::string s = serialize_query(pc, {}, false);
    CHECK(s.find("(set-logic QF_ABV)") != std::string::npos);
    CHECK(s.find("(check-sat)") != std::string::npos);
    CHECK(s.find("declare-fun") == std::string::npos);
  }

  SUBCASE("deterministic output") {
    std::vector<Term> q{eq(add(a, a), mk_const(8, 4))};
    CHECK(serialize_query(pc, q, true) == serialize_query(pc, q, true));
  }

  SUBCASE("model request emits one get-value per symbol") {
    SymbolTable t2;
    Term x = t2.fresh("x", 4);
    Term y = t2.fresh("y", 4);
    std::string s =
        serialize_query(pc, std::vector<Term>{eq(add(x, y), mk_const(4, 1))}, true);
    CHECK(s.find("(get-value (x))") != std::string::npos);
    CHECK(s.find("(get-value (y))") != std::string::npos);
  }

  SUBCASE("array reads use select/store over Array sort") {
    SymbolTable t2;
    Term alpha = t2.fresh("alpha", 8);
    std::vector<Term> cells;
    for (int i = 0; i < 4; ++i) cells.push_back(mk_const(8, i + 1));
    Term arr = mk_store(mk_array(8, cells), alpha, mk_const(8, 9));
    Term sel = mk_select(arr, alpha);
    std::string s =
        serialize_query(pc, std::vector<Term>{eq(sel, mk_const(8, 9))}, false);
    CHECK(s.find("(Array (_ BitVec 8) (_ BitVec 8))") != std::string::npos);
    CHECK(s.find("(select ") != std::string::npos);
    CHECK(s.find("(store ") != std::string::npos);
  }

  SUBCASE("shared subterms become define-funs, script stays linear") {
    SymbolTable t2;
    Term h = t2.fresh("h", 32);
    // Chain where each level references the previous twice; inline expansion
    // would be exponential.
    for (int i = 0; i < 24; ++i)
      h = add(or_(shl(h, mk_const(32, 5)), lshr(h, mk_const(32, 27))), h);
    std::string s =
        serialize_query(pc, std::vector<Term>{eq(h, mk_const(32, 0))}, false);
    CHECK(s.find("(define-fun t") != std::string::npos);
    CHECK(s.size() < 100000);
  }
}

TEST_CASE("external solver subprocess plumbing") {
  SymbolTable tab;
  Term a = tab.fresh("a", 4);
  PathCondition pc;
  pc.append(eq(a, mk_const(4, 3)));

  SUBCASE("verdict parsing through a stub process") {
    ExternalSolver unsat_stub("printf unsat");
    CHECK(unsat_stub.check_sat(pc, {}).verdict == Verdict::Unsat);
    ExternalSolver unknown_stub("printf unknown");
    CHECK(unknown_stub.check_sat(pc, {}).verdict == Verdict::Unknown);
  }

  SUBCASE("model parsing through a scripted solver") {
    std::string path = "./fake_solver_model.sh";
    {
      std::ofstream f(path);
      f << "#!/bin/sh\ncat > /dev/null\necho sat\necho '((a #x3))'\n";
    }
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
    ExternalSolver stub(path);
    QueryResult r = stub.check_sat(pc, {}, true);
    CHECK(r.verdict == Verdict::Sat);
    REQUIRE(r.model.has_value());
    CHECK(r.model->at(a.symbol_id()) == 3);
    std::filesystem::remove(path);
  }

  SUBCASE("hung solver is killed at the timeout") {
    ExternalSolver slow("sleep 30");
    slow.set_timeout_s(0.2);
    auto t0 = std::chrono::steady_clock::now();
    QueryResult r = slow.check_sat(pc, {});
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(dt < 1.2);
    CHECK(slow.stats().timeout_count == 1);
  }

  SUBCASE("missing binary reports Unknown with a note") {
    ExternalSolver gone("/no/such/solver/binary");
    QueryResult r = gone.check_sat(pc, {});
    CHECK(r.verdict == Verdict::Unknown);
  }
}

TEST_CASE("array query round-trip through builtin evaluation") {
  SymbolTable tab;
  Term alpha = tab.fresh("alpha", 8);
  std::vector<Term> cells;
  for (int i = 0; i < 4; ++i) cells.push_back(mk_const(8, 10 + i));
  Term arr = mk_store(mk_array(8, cells), alpha, mk_const(8, 99));
  Term sel = mk_select(arr, mk_const(8, 2));

  BuiltinSolver slv;
  PathCondition pc;
  pc.append(ult(alpha, mk_const(8, 4)));
  // selecting cell 2 yields 99 exactly when the symbolic store aliased it
  QueryResult hit = slv.check_sat(pc, {eq(sel, mk_const(8, 99)), eq(alpha, mk_const(8, 2))});
  CHECK(hit.verdict == Verdict::Sat);
  QueryResult miss = slv.check_sat(pc, {eq(sel, mk_const(8, 99)), eq(alpha, mk_const(8, 1))});
  CHECK(miss.verdict == Verdict::Unsat);
  QueryResult base = slv.check_sat(pc, {eq(sel, mk_const(8, 12)), eq(alpha, mk_const(8, 1))});
  CHECK(base.verdict == Verdict::Sat);
}

TEST_CASE("serialized scripts are balanced s-expressions") {
  SymbolTable tab;
  Term a = tab.fresh("a", 8);
  Term alpha = tab.fresh("alpha", 8);
  std::vector<Term> cells;
  for (int i = 0; i < 6; ++i) cells.push_back(mk_const(8, i));
  Term arr = mk_store(mk_array(8, cells), alpha, a);
  PathCondition pc;
  pc.append(ult(alpha, mk_const(8, 6)));
  pc.append(eq(mk_select(arr, alpha), add(a, mk_const(8, 1))));
  std::string s = serialize_query(pc, {}, true);

  int depth = 0, min_depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    min_depth = std::min(min_depth, depth);
  }
  CHECK(depth == 0);
  CHECK(min_depth == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') > 4);
  CHECK(s.find("(check-sat)") != std::string::npos);
}

TEST_CASE("array cell counter") {
  SymbolTable tab;
  Term alpha = tab.fresh("alpha", 8);
  std::vector<Term> cells(16, mk_const(8, 0));
  Term sel = mk_select(mk_array(8, cells), alpha);
  BuiltinSolver slv;
  PathCondition pc;
  uint64_t before = slv.stats().array_cells;
  (void)slv.check_sat(pc, {eq(sel, mk_const(8, 0))});
  CHECK(slv.stats().array_cells - before == 16);
}
