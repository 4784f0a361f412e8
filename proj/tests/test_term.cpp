// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "symx/term.hpp"

using namespace symx;

TEST_CASE("constant construction") {
  Term z = mk_const(8, 0);
  CHECK(z.is_const());
  CHECK(z.width() == 8);
  CHECK(z.const_value() == 0);

  Term one = mk_const(1, 1);
  CHECK(one.const_value() == 1);

  CHECK_THROWS_AS(mk_const(4, 16), TermError);
  CHECK_THROWS_AS(mk_const(0, 0), TermError);
  CHECK_THROWS_AS(mk_const(65, 0), TermError);

  // Structurally equal for equal arguments.
  CHECK(struct_eq(mk_const(8, 42), mk_const(8, 42)));
  CHECK(!struct_eq(mk_const(8, 42), mk_const(8, 43)));
  CHECK(!struct_eq(mk_const(8, 42), mk_const(16, 42)));
}

TEST_CASE("symbol table uniqueness") {
  SymbolTable tab;
  Term a = tab.fresh("a", 32);
  CHECK(a.is_symbol());
  CHECK(a.width() == 32);
  CHECK_THROWS_AS(tab.fresh("a", 32), TermError);
  Term irq = tab.fresh("irq", 6);
  CHECK(irq.width() == 6);
  CHECK(irq.symbol_id() != a.symbol_id());
}

TEST_CASE("constant folding basics") {
  // Wraparound mod 256.
  Term r = add(mk_const(8, 250), mk_const(8, 10));
  CHECK(r.is_const());
  CHECK(r.const_value() == 4);

  CHECK(sub(mk_const(4, 6), mk_const(4, 4)).const_value() == 2);

  // SMT-LIB division conventions.
  CHECK(udiv(mk_const(8, 7), mk_const(8, 0)).const_value() == 255);
  CHECK(urem(mk_const(8, 7), mk_const(8, 0)).const_value() == 7);

  // Shifts beyond width.
  CHECK(shl(mk_const(8, 3), mk_const(8, 9)).const_value() == 0);
  CHECK(lshr(mk_const(8, 200), mk_const(8, 9)).const_value() == 0);
  CHECK(ashr(mk_const(8, 200), mk_const(8, 9)).const_value() == 255);
  CHECK(ashr(mk_const(8, 100), mk_const(8, 9)).const_value() == 0);

  // Signed comparison at width 4: 9 is -7.
  CHECK(slt(mk_const(4, 9), mk_const(4, 2)).const_value() == 1);
  CHECK(ult(mk_const(4, 9), mk_const(4, 2)).const_value() == 0);
}

TEST_CASE("syntactic identity folds") {
  SymbolTable tab;
  Term a = tab.fresh("a", 8);
  Term b = tab.fresh("b", 8);

  CHECK(eq(a, a).const_value() == 1);
  CHECK(xor_(a, a).const_value() == 0);
  CHECK(sub(a, a).const_value() == 0);
  CHECK(and_(a, a).node() == a.node());
  CHECK(or_(a, a).node() == a.node());

  // Not in the fold set: stays symbolic.
  CHECK(ne(a, a).is_op());
  CHECK(ule(a, a).is_op());
  CHECK(add(a, b).is_op());
}

TEST_CASE("width and arity violations") {
  SymbolTable tab;
  Term a8 = tab.fresh("a", 8);
  Term b4 = tab.fresh("b", 4);
  CHECK_THROWS_AS(add(a8, b4), TermError);
  CHECK_THROWS_AS(apply(OpTag::Not, {a8, a8}), TermError);
  CHECK_THROWS_AS(ite(a8, a8, a8), TermError);
  CHECK_THROWS_AS(extract(a8, 8, 0), TermError);
  CHECK_THROWS_AS(extract(a8, 2, 5), TermError);
  CHECK_THROWS_AS(zext(a8, 4), TermError);
  CHECK_THROWS_AS(concat(a8, mk_const(64, 0)), TermError);
}

TEST_CASE("extract, extend, concat semantics") {
  Term v = mk_const(8, 0xA5);
  CHECK(extract(v, 7, 4).const_value() == 0xA);
  CHECK(extract(v, 3, 0).const_value() == 0x5);
  CHECK(zext(mk_const(4, 0x9), 8).const_value() == 0x09);
  CHECK(sext(mk_const(4, 0x9), 8).const_value() == 0xF9);
  CHECK(concat(mk_const(4, 0xA), mk_const(4, 0x5)).const_value() == 0xA5);
  CHECK(concat(mk_const(4, 0xA), mk_const(4, 0x5)).width() == 8);
}

namespace {

// Random Const-only tree builder for the folding-soundness oracle.
Term random_const_tree(std::mt19937& rng, unsigned depth, unsigned width) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 0 : 9);
  auto rnd_val = [&](unsigned w) {
    std::uniform_int_distribution<uint64_t> d(0, w >= 64 ? ~uint64_t{0}
                                                         : (uint64_t{1} << w) - 1);
    return d(rng);
  };
  int k = kind(rng);
  if (k == 0) return mk_const(width, rnd_val(width));
  static const OpTag binary[] = {OpTag::Add, OpTag::Sub, OpTag::Mul, OpTag::Udiv,
                                 OpTag::Urem, OpTag::And, OpTag::Or,  OpTag::Xor,
                                 OpTag::Shl,  OpTag::Lshr, OpTag::Ashr};
  switch (k) {
    case 1:
      return not_(random_const_tree(rng, depth - 1, width));
    case 2: {
      Term c = random_const_tree(rng, depth - 1, 1);
      return ite(c, random_const_tree(rng, depth - 1, width),
                 random_const_tree(rng, depth - 1, width));
    }
    case 3: {
      // Relational at a smaller width, then widen back.
      Term a = random_const_tree(rng, depth - 1, width);
      Term b = random_const_tree(rng, depth - 1, width);
      static const OpTag rel[] = {OpTag::Eq, OpTag::Ne, OpTag::Ult,
                                  OpTag::Ule, OpTag::Slt, OpTag::Sle};
      std::uniform_int_distribution<int> rd(0, 5);
      return zext(apply(rel[rd(rng)], {a, b}), width);
    }
    default: {
      std::uniform_int_distribution<size_t> bd(0, std::size(binary) - 1);
      Term a = random_const_tree(rng, depth - 1, width);
      Term b = random_const_tree(rng, depth - 1, width);
      return apply(binary[bd(rng)], {a, b});
    }
  }
}

// Random tree over a fixed symbol set, used for the substitution property.
Term random_sym_tree(std::mt19937& rng, unsigned depth, unsigned width,
                     const std::vector<Term>& syms) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 1 : 8);
  int k = kind(rng);
  if (k == 0) {
    std::uniform_int_distribution<uint64_t> d(0, (uint64_t{1} << width) - 1);
    return mk_const(width, d(rng));
  }
  if (k == 1) {
    std::uniform_int_distribution<size_t> d(0, syms.size() - 1);
    Term s = syms[d(rng)];
    if (s.width() == width) return s;
    if (s.width() < width) return zext(s, width);
    return extract(s, width - 1, 0);
  }
  static const OpTag binary[] = {OpTag::Add, OpTag::Sub, OpTag::Mul, OpTag::Udiv,
                                 OpTag::Urem, OpTag::And, OpTag::Or,  OpTag::Xor,
                                 OpTag::Shl,  OpTag::Lshr, OpTag::Ashr};
  if (k == 2) {
    Term a = random_sym_tree(rng, depth - 1, width, syms);
    Term b = random_sym_tree(rng, depth - 1, width, syms);
    static const OpTag rel[] = {OpTag::Eq, OpTag::Ne, OpTag::Ult,
                                OpTag::Ule, OpTag::Slt, OpTag::Sle};
    std::uniform_int_distribution<int> rd(0, 5);
    return zext(apply(rel[rd(rng)], {a, b}), width);
  }
  std::uniform_int_distribution<size_t> bd(0, std::size(binary) - 1);
  Term a = random_sym_tree(rng, depth - 1, width, syms);
  Term b = random_sym_tree(rng, depth - 1, width, syms);
  return apply(binary[bd(rng)], {a, b});
}

} // namespace

TEST_CASE("folding soundness vs direct interpreter oracle") {
  std::mt19937 rng(12345);
  symx::Assignment empty;
  for (int i = 0; i < 2000; ++i) {
    unsigned width = 1 + (rng() % 3 == 0 ? rng() % 64 : rng() % 16);
    Term t = random_const_tree(rng, 6, width);
    REQUIRE(t.is_const()); // no-symbol trees fold fully
    CAPTURE(to_string(t));
    CHECK(t.const_value() == oracle::interp(t, empty));
  }
}

TEST_CASE("substitution then fold equals direct interpretation") {
  std::mt19937 rng(777);
  SymbolTable tab;
  std::vector<Term> syms = {tab.fresh("x", 4), tab.fresh("y", 8), tab.fresh("z", 4)};
  for (int i = 0; i < 500; ++i) {
    unsigned width = 1 + rng() % 12;
    Term t = random_sym_tree(rng, 5, width, syms);
    Assignment env;
    env[syms[0].symbol_id()] = rng() & 0xF;
    env[syms[1].symbol_id()] = rng() & 0xFF;
    env[syms[2].symbol_id()] = rng() & 0xF;
    Term folded = substitute(t, env);
    REQUIRE(folded.is_const());
    CHECK(folded.const_value() == oracle::interp(t, env));
    CHECK(folded.const_value() == eval(t, env));
  }
}

TEST_CASE("partial substitution keeps unassigned symbols") {
  SymbolTable tab;
  Term x = tab.fresh("x", 8);
  Term y = tab.fresh("y", 8);
  Term t = add(x, y);
  Assignment env{{x.symbol_id(), 3}};
  Term s = substitute(t, env);
  CHECK(s.is_op());
  std::map<SymbolId, SymbolInfo> left;
  collect_symbols(s, left);
  CHECK(left.size() == 1);
  CHECK(left.begin()->second.name == "y");
}

TEST_CASE("select resolution through concrete stores") {
  SymbolTable tab;
  Term alpha = tab.fresh("alpha", 8);
  std::vector<Term> cells;
  for (int i = 0; i < 4; ++i) cells.push_back(mk_const(8, 10 + i));
  Term arr = mk_array(8, cells);

  // Concrete select resolves to the cell.
  CHECK(mk_select(arr, mk_const(8, 2)).const_value() == 12);

  // Symbolic store blocks resolution.
  Term st = mk_store(arr, alpha, mk_const(8, 99));
  CHECK(mk_select(st, mk_const(8, 2)).kind() == Kind::Select);

  // Concrete store on top resolves again at its own index.
  Term st2 = mk_store(st, mk_const(8, 2), mk_const(8, 55));
  CHECK(mk_select(st2, mk_const(8, 2)).const_value() == 55);

  // eval walks stores under an assignment.
  Term sel = mk_select(st, alpha);
  Assignment env{{alpha.symbol_id(), 1}};
  CHECK(eval(sel, env) == 99);
  CHECK(oracle::interp(sel, env) == 99);
}

TEST_CASE("term node accounting moves with construction") {
  int64_t before = live_term_nodes();
  {
    Term t = add(mk_const(8, 1), mk_const(8, 2));
    CHECK(live_term_nodes() > before - 1);
    (void)t;
  }
  CHECK(live_term_nodes() == before);
}
