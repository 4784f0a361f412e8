// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "symx/duv/busfront.hpp"
#include "symx/duv/gcd.hpp"
#include "symx/duv/hash.hpp"
#include "symx/duv/map.hpp"
#include "symx/duv/plic.hpp"
#include "symx/harness/scenario.hpp"

using namespace symx;
using namespace symx::duv;
using namespace symx::harness;

TEST_CASE("hash reference term matches precomputed values") {
  // Values frozen from an independent scripted evaluation of the formula.
  auto run = [](uint32_t a, uint32_t b) {
    Term t = hash_reference_term(mk_const(32, a), mk_const(32, b));
    REQUIRE(t.is_const());
    return t.const_value();
  };
  CHECK(run(0, 0) == 0x78888CD9);
  CHECK(run(1, 2) == 0xBEBA1213);
  CHECK(run(0xDEADBEEF, 0x12345678) == 0x2E755892);
  CHECK(run(15, 15) == 0x0988FF8C);
  // Cross-check against the test-side integer oracle.
  for (uint32_t a = 0; a < 8; ++a)
    for (uint32_t b = 0; b < 8; ++b) CHECK(run(a, b) == oracle::hash_ref(a, b));
}

TEST_CASE("map reference byte matches precomputed values") {
  auto run = [](uint8_t in, uint8_t m) {
    Term t = map_reference_byte(mk_const(8, in), mk_const(8, m));
    REQUIRE(t.is_const());
    return t.const_value();
  };
  // map([1..8], m=3) frozen: [2,3,0,1,14,15,12,13]
  const uint64_t expect[8] = {2, 3, 0, 1, 14, 15, 12, 13};
  for (int i = 0; i < 8; ++i) CHECK(run(1 + i, 3) == expect[i]);
  for (int v = 0; v < 8; ++v) CHECK(run(v, 0) == static_cast<uint64_t>(v));
  for (int v = 0; v < 16; ++v)
    for (int m = 0; m < 16; ++m)
      CHECK(run(v, m) == oracle::map_ref({static_cast<uint8_t>(v)},
                                          static_cast<uint8_t>(m))[0]);
}

TEST_CASE("gcd peripherals compute gcd on concrete replays") {
  const Scenario* s = find_scenario("gcd-cross-4bit");
  ScenarioOptions opts;
  auto triple = [&](uint64_t a, uint64_t b) {
    auto out = run_concrete(*s, opts, {{"a", a}, {"b", b}});
    REQUIRE(out.completed);
    REQUIRE(out.errors.empty());
    CHECK(out.observables.at("result_rtl") == out.observables.at("result_tlm"));
    return out.observables.at("result_rtl");
  };
  CHECK(triple(6, 4) == 2);
  CHECK(triple(7, 7) == 7);
  CHECK(triple(15, 1) == 1);
}

TEST_CASE("level equivalence: exhaustive concrete co-simulation") {
  ScenarioOptions opts;

  SUBCASE("gcd over all 225 valid pairs") {
    const Scenario* s = find_scenario("gcd-cross-4bit");
    for (uint64_t a = 1; a < 16; ++a)
      for (uint64_t b = 1; b < 16; ++b) {
        auto out = run_concrete(*s, opts, {{"a", a}, {"b", b}});
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(out.completed);
        REQUIRE(out.errors.empty());
        CHECK(out.observables.at("result_rtl") == oracle::gcd_ref(a, b));
      }
  }

  SUBCASE("hash over all 256 pairs") {
    const Scenario* s = find_scenario("hash-cross");
    for (uint64_t a = 0; a < 16; ++a)
      for (uint64_t b = 0; b < 16; ++b) {
        auto out = run_concrete(*s, opts, {{"a", a}, {"b", b}});
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(out.completed);
        REQUIRE(out.errors.empty());
        CHECK(out.observables.at("result_rtl") == oracle::hash_ref(a, b));
      }
  }

  SUBCASE("map over its reduced-width domain") {
    const Scenario* s = find_scenario("map-cross");
    for (const auto& inputs : s->oracle_domain()) {
      auto out = run_concrete(*s, opts, inputs);
      REQUIRE(out.completed);
      REQUIRE(out.errors.empty());
      uint8_t in0 = static_cast<uint8_t>(inputs.at("in0"));
      uint8_t m = static_cast<uint8_t>(inputs.at("m"));
      CHECK(out.observables.at("out0_rtl") == oracle::map_ref({in0}, m)[0]);
      CHECK(out.observables.at("out0_rtl") == out.observables.at("out0_tlm"));
      CHECK(out.observables.at("out7_rtl") == out.observables.at("out7_tlm"));
    }
  }

  SUBCASE("plic over its cross domain") {
    const Scenario* s = find_scenario("plic-cross");
    for (const auto& inputs : s->oracle_domain()) {
      auto out = run_concrete(*s, opts, inputs);
      REQUIRE(out.completed);
      REQUIRE(out.errors.empty());
      CHECK(out.observables.at("claim_rtl") == out.observables.at("claim_tlm"));
    }
  }
}

TEST_CASE("hash levels agree at full width over 1000 random pairs") {
  std::mt19937_64 rng(20260808);
  for (int i = 0; i < 1000; ++i) {
    uint32_t a = static_cast<uint32_t>(rng());
    uint32_t b = static_cast<uint32_t>(rng());

    ConcreteContext ctx({});
    SimKernel k(ctx, 10000);
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    HashRtl rtl(k, nullptr, BugSet{}, bus);
    HashTlm tlm(k, nullptr, BugSet{});
    for (auto* regs : {&rtl.regs, &tlm.regs}) {
      regs->poke_reg("IN_A", mk_const(32, a));
      regs->poke_reg("IN_B", mk_const(32, b));
      regs->poke_reg("CTRL", mk_const(32, 1));
    }
    k.notify(tlm.start, 1);
    k.run(28);
    CAPTURE(a);
    CAPTURE(b);
    REQUIRE(rtl.status().const_value() == 1);
    REQUIRE(tlm.status().const_value() == 1);
    uint64_t r = rtl.result().const_value();
    CHECK(r == tlm.result().const_value());
    CHECK(r == oracle::hash_ref(a, b));
  }
}

namespace {

// Drives a bare PLIC (TLM) concretely and returns the claim register.
uint64_t plic_claim_concrete(const oracle::PlicState& st) {
  ConcreteContext ctx({});
  SimKernel k(ctx, 10000);
  PlicTlm plic(k, nullptr, BugSet{});
  for (unsigned id = 1; id <= 8; ++id)
    plic.regs.poke_word(PlicTlm::kPriority0 + 4 * (id - 1),
                        mk_const(32, st.priority[id]));
  plic.regs.poke_reg("PENDING", mk_const(32, st.pending));
  plic.regs.poke_reg("ENABLE", mk_const(32, st.enable));
  plic.regs.poke_reg("THRESHOLD", mk_const(32, st.threshold));
  plic.regs.poke_reg("CTRL", mk_const(32, 2));
  k.notify(plic.start, 1);
  k.run(4);
  return plic.claim_reg().const_value();
}

} // namespace

TEST_CASE("plic claim agrees with the brute-force comparator") {
  // Tie example: pending {3,6}, both priority 5, threshold 2 -> claim 3.
  {
    oracle::PlicState st;
    st.priority.assign(9, 0);
    st.priority[3] = 5;
    st.priority[6] = 5;
    st.pending = (1u << 3) | (1u << 6);
    st.enable = 0x1FE;
    st.threshold = 2;
    CHECK(oracle::plic_claim_ref(st, 8) == 3);
    CHECK(plic_claim_concrete(st) == 3);
  }
  // Boundary: priority 2 vs threshold 2 -> not eligible (strict >).
  {
    oracle::PlicState st;
    st.priority.assign(9, 0);
    st.priority[4] = 2;
    st.pending = 1u << 4;
    st.enable = 0x1FE;
    st.threshold = 2;
    CHECK(oracle::plic_claim_ref(st, 8) == 0);
    CHECK(plic_claim_concrete(st) == 0);
  }
  // Pairwise sweep: every source pair, every priority pair, all thresholds.
  for (unsigned i = 1; i <= 8; ++i) {
    for (unsigned j = i + 1; j <= 8; ++j) {
      for (uint32_t pi = 0; pi < 8; pi += 2) {
        for (uint32_t pj = 0; pj < 8; pj += 2) {
          for (uint32_t thr = 0; thr < 8; thr += 3) {
            oracle::PlicState st;
            st.priority.assign(9, 0);
            st.priority[i] = pi;
            st.priority[j] = pj;
            st.pending = (1u << i) | (1u << j);
            st.enable = 0x1FE;
            st.threshold = thr;
            CAPTURE(i);
            CAPTURE(j);
            CAPTURE(pi);
            CAPTURE(pj);
            CAPTURE(thr);
            CHECK(plic_claim_concrete(st) == oracle::plic_claim_ref(st, 8));
          }
        }
      }
    }
  }
}

TEST_CASE("plic claim idempotence: second claim returns zero") {
  ConcreteContext ctx({});
  SimKernel k(ctx, 10000);
  PlicTlm plic(k, nullptr, BugSet{});
  plic.regs.poke_word(PlicTlm::kPriority0 + 4 * 4, mk_const(32, 6)); // source 5
  plic.regs.poke_reg("PENDING", mk_const(32, 1u << 5));
  plic.regs.poke_reg("ENABLE", mk_const(32, 0x1FE));
  plic.regs.poke_reg("THRESHOLD", mk_const(32, 0));

  plic.regs.poke_reg("CTRL", mk_const(32, 2));
  k.notify(plic.start, 1);
  k.run(4);
  CHECK(plic.claim_reg().const_value() == 5);
  CHECK(plic.pending_reg().const_value() == 0);

  plic.regs.poke_reg("CTRL", mk_const(32, 2));
  k.notify(plic.start, 1);
  k.run(k.now() + 4);
  CHECK(plic.claim_reg().const_value() == 0);
}

TEST_CASE("mutation table mechanics") {
  MutationTable table;
  table.record_site("gcd.tlm.sub_a", "gcd", "tlm", OpTag::Sub);
  table.record_site("gcd.tlm.loop_ne", "gcd", "tlm", OpTag::Ne);
  table.record_site("gcd.tlm.sub_a", "gcd", "tlm", OpTag::Sub); // dedup
  CHECK(table.catalog().size() == 2);

  // Same-class replacement applies; clearing restores.
  table.set_mutation("gcd.tlm.sub_a", OpTag::Add);
  CHECK(table.effective("gcd.tlm.sub_a", OpTag::Sub) == OpTag::Add);
  CHECK(table.effective("gcd.tlm.loop_ne", OpTag::Ne) == OpTag::Ne);
  table.clear_mutation();
  CHECK(table.effective("gcd.tlm.sub_a", OpTag::Sub) == OpTag::Sub);

  // Cross-class replacement is rejected.
  CHECK_THROWS_AS(table.set_mutation("gcd.tlm.sub_a", OpTag::Ult), ContextError);
  CHECK_THROWS_AS(table.set_mutation("nope", OpTag::Add), ContextError);

  CHECK(mutation_alternatives(OpTag::Sub).size() == 4);
  CHECK(mutation_alternatives(OpTag::Ult).size() == 5);
  CHECK(mutation_alternatives(OpTag::And).size() == 2);
  CHECK(mutation_alternatives(OpTag::Not).empty());
  CHECK(mutation_alternatives(OpTag::Concat).empty());
}

TEST_CASE("mutated subtraction changes gcd behavior in the domain") {
  const Scenario* s = find_scenario("gcd-tlm-standalone");
  MutationTable table;
  ScenarioOptions opts;
  opts.mutations = &table;
  // Discover the catalog with one clean replay, then flip the subtraction.
  auto base = run_concrete(*s, opts, {{"a", 2}, {"b", 1}});
  REQUIRE(base.completed);
  CHECK(base.observables.at("result") == 1);
  REQUIRE(table.find("gcd.tlm.sub_a"));

  // With a := a + b the value walks away from b and never terminates for
  // (2,1); the bounded replay reports the difference as non-completion.
  table.set_mutation("gcd.tlm.sub_a", OpTag::Add);
  auto mutated = run_concrete(*s, opts, {{"a", 2}, {"b", 1}});
  bool differs = !mutated.completed || !mutated.errors.empty() ||
                 mutated.observables != base.observables;
  CHECK(differs);

  // The strict-to-nonstrict swap comparison is a true equivalent mutant
  // here: the loop guard pins a != b at that site, so the oracle must find
  // no witness anywhere in the domain.
  table.set_mutation("gcd.tlm.swap_cmp", OpTag::Ule);
  ScenarioOptions clean;
  MutationTable none;
  clean.mutations = &none;
  bool any_diff = false;
  for (const auto& inputs : s->oracle_domain()) {
    auto b2 = run_concrete(*s, opts, inputs);
    auto b1 = run_concrete(*s, clean, inputs);
    if (b1.completed != b2.completed || b1.observables != b2.observables ||
        b1.errors.size() != b2.errors.size()) {
      any_diff = true;
      break;
    }
  }
  CHECK(!any_diff);
}

TEST_CASE("boundary-only relational mutant diverges exactly on ties") {
  // prio > thr replaced by prio >= thr: visible precisely at prio == thr.
  const Scenario* s = find_scenario("plic-tlm-threshold");
  MutationTable table;
  ScenarioOptions opts;
  opts.mutations = &table;
  auto seed = run_concrete(*s, opts, {{"prio", 3}, {"thr", 2}});
  REQUIRE(seed.completed);
  REQUIRE(table.find("plic.tlm.thr_cmp"));
  table.set_mutation("plic.tlm.thr_cmp", OpTag::Ule);

  ScenarioOptions clean;
  std::vector<std::pair<uint64_t, uint64_t>> witnesses;
  for (const auto& inputs : s->oracle_domain()) {
    auto b1 = run_concrete(*s, clean, inputs);
    auto b2 = run_concrete(*s, opts, inputs);
    bool diff = b1.errors.size() != b2.errors.size() ||
                b1.observables != b2.observables;
    if (diff) witnesses.emplace_back(inputs.at("prio"), inputs.at("thr"));
  }
  REQUIRE(!witnesses.empty());
  for (const auto& [p, t] : witnesses) CHECK(p == t);
}

TEST_CASE("tlm transport response-code mode") {
  ConcreteContext ctx({});
  SimKernel k(ctx, 10000);
  GcdTlm gcd(k, nullptr, BugSet{});

  auto mk_txn = [](TlmCmd cmd, uint64_t addr, unsigned len) {
    TlmTransaction t;
    t.cmd = cmd;
    t.addr = mk_const(8, addr);
    t.length = len;
    for (unsigned i = 0; i < len; ++i) t.data.push_back(mk_const(8, i + 1));
    return t;
  };

  // Valid word write into IN_A, then read it back.
  TlmTransaction w = mk_txn(TlmCmd::Write, 0x00, 4);
  CHECK(gcd.transport(w, TlmCheckMode::ResponseCode) == TlmResponse::Ok);
  TlmTransaction r = mk_txn(TlmCmd::Read, 0x00, 4);
  r.data.clear();
  CHECK(gcd.transport(r, TlmCheckMode::ResponseCode) == TlmResponse::Ok);
  CHECK(r.data[0].const_value() == 1);
  CHECK(r.data[3].const_value() == 4);

  // Invalid length.
  TlmTransaction l = mk_txn(TlmCmd::Write, 0x00, 3);
  CHECK(gcd.transport(l, TlmCheckMode::ResponseCode) == TlmResponse::LengthError);

  // Unaligned.
  TlmTransaction u = mk_txn(TlmCmd::Write, 0x02, 4);
  CHECK(gcd.transport(u, TlmCheckMode::ResponseCode) == TlmResponse::AddressError);

  // Out of any window.
  TlmTransaction o = mk_txn(TlmCmd::Write, 0x18, 4);
  CHECK(gcd.transport(o, TlmCheckMode::ResponseCode) == TlmResponse::AddressError);

  // Writing a read-only window is an address error and changes nothing.
  TlmTransaction ro = mk_txn(TlmCmd::Write, 0x10, 4);
  CHECK(gcd.transport(ro, TlmCheckMode::ResponseCode) == TlmResponse::AddressError);
  CHECK(gcd.regs.peek_reg("RESULT").const_value() == 0);
}

TEST_CASE("window containment does not wrap at the address top") {
  RegSpec reg{"X", 0x00, 4, Access::RW};
  Term contained = window_contains(reg, mk_const(8, 0xFE), 4);
  // 0xFE..0x101 is nowhere near [0,3]; 8-bit wraparound must not admit it.
  CHECK(contained.is_const());
  CHECK(contained.const_value() == 0);
}

TEST_CASE("rtl write helper leaves RO and unmapped words alone") {
  ConcreteContext ctx({});
  SimKernel k(ctx, 1000);
  SignalId clk = k.make_clock("clk", 2, 50);
  RtlBus bus = RtlBus::create(k, "bus", clk);
  GcdRtl gcd(k, nullptr, BugSet{}, bus);
  gcd.regs.poke_reg("RESULT", mk_const(32, 77));

  rtl_write_all_rw(gcd.regs, mk_const(8, 0x10), mk_const(32, 5)); // RESULT is RO
  CHECK(gcd.regs.peek_reg("RESULT").const_value() == 77);
  rtl_write_all_rw(gcd.regs, mk_const(8, 0x1C), mk_const(32, 5)); // unmapped
  CHECK(gcd.regs.peek_reg("IN_A").const_value() == 0);
  rtl_write_all_rw(gcd.regs, mk_const(8, 0x04), mk_const(32, 5)); // IN_B
  CHECK(gcd.regs.peek_reg("IN_B").const_value() == 5);
}
