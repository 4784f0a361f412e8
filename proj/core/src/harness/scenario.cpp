// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/harness/scenario.hpp"

#include <array>
#include <optional>

#include "symx/duv/busfront.hpp"
#include "symx/duv/gcd.hpp"
#include "symx/duv/hash.hpp"
#include "symx/duv/map.hpp"
#include "symx/duv/plic.hpp"

namespace symx::harness {

namespace {

using namespace symx::duv;

Term c32(uint64_t v) { return mk_const(32, v); }
Term c8(uint64_t v) { return mk_const(8, v); }

// ---------------------------------------------------------------------
// Testbench-side references. Built with plain apply() so an active mutant
// never rewrites the expectation it is checked against.
// ---------------------------------------------------------------------

// Division-based Euclid, explored symbolically like any other test code.
Term gcd_reference_term(ExecutionContext& ctx, Term a, Term b) {
  Term zero = c32(0);
  while (ctx.branch(ne(b, zero))) {
    Term r = ctx.checked_rem(a, b, "gcd.ref.rem");
    a = b;
    b = r;
  }
  return a;
}

struct PlicRef {
  Term claim;
  Term line32;
  Term pending_after;
};

// Width-1 dataflow formulation, structurally unlike either DUV level.
PlicRef plic_reference(const Term& pending32, const Term& enable32,
                       const std::array<Term, 9>& prio32, const Term& thr32) {
  Term line = mk_const(1, 0);
  Term best_prio = c32(0);
  Term best_id = c32(0);
  for (unsigned id = 1; id <= 8; ++id) {
    Term pb = extract(pending32, id, id);
    Term eb = extract(enable32, id, id);
    Term above = ult(thr32, prio32[id]);
    Term elig = and_(and_(pb, eb), above);
    Term replace = and_(elig, ult(best_prio, prio32[id]));
    best_prio = ite(replace, prio32[id], best_prio);
    best_id = ite(replace, c32(id), best_id);
    line = or_(line, elig);
  }
  PlicRef ref;
  ref.claim = best_id;
  ref.line32 = zext(line, 32);
  ref.pending_after = and_(pending32, not_(shl(c32(1), best_id)));
  return ref;
}

// ---------------------------------------------------------------------
// GCD scenarios
// ---------------------------------------------------------------------

void gcd_functional(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl,
                    bool tlm) {
  SimKernel k(ctx, opt.step_budget);
  Term a = ctx.make_symbol("a", 4);
  Term b = ctx.make_symbol("b", 4);
  if (!opt.bugs.has("gcd-inf")) {
    ctx.assume(ule(mk_const(4, 1), a));
    ctx.assume(ule(mk_const(4, 1), b));
  }
  Term a32 = zext(a, 32);
  Term b32 = zext(b, 32);

  std::optional<GcdRtl> r;
  std::optional<GcdTlm> t;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    r.emplace(k, opt.mutations, opt.bugs, bus);
  }
  if (tlm) t.emplace(k, opt.mutations, opt.bugs);

  auto tlm_phase = [&](SimTime duration) {
    inject_direct(t->regs, "IN_A", a32);
    inject_direct(t->regs, "IN_B", b32);
    inject_direct(t->regs, "CTRL", c32(1));
    k.notify(t->start, 1);
    run_or_stop(k, k.now() + duration);
  };
  auto rtl_phase = [&](SimTime duration) {
    inject_direct(r->regs, "IN_A", a32);
    inject_direct(r->regs, "IN_B", b32);
    inject_direct(r->regs, "CTRL", c32(1));
    run_or_stop(k, k.now() + duration);
  };

  if (rtl && tlm) {
    if (opt.cross_order == "rtl-first") {
      rtl_phase(44);
      tlm_phase(64);
    } else {
      tlm_phase(64);
      rtl_phase(44);
    }
    ctx.check_assert(eq(r->status(), c32(1)), "gcd.cross.rtl_done");
    ctx.check_assert(eq(t->status(), c32(1)), "gcd.cross.tlm_done");
    ctx.check_assert(eq(r->result(), t->result()), "gcd.cross.result");
    ctx.observe("result_rtl", r->result());
    ctx.observe("result_tlm", t->result());
  } else if (rtl) {
    rtl_phase(44);
    ctx.check_assert(eq(r->status(), c32(1)), "gcd.rtl.done");
    Term ref = gcd_reference_term(ctx, a32, b32);
    ctx.check_assert(eq(r->result(), ref), "gcd.rtl.result");
    ctx.observe("result", r->result());
    ctx.observe("status", r->status());
  } else {
    // Quiesce-driven: the runaway zero-input loop of the gcd-inf variant is
    // cut by the step budget, not by simulated time.
    tlm_phase(1000000000);
    ctx.check_assert(eq(t->status(), c32(1)), "gcd.tlm.done");
    Term ref = gcd_reference_term(ctx, a32, b32);
    ctx.check_assert(eq(t->result(), ref), "gcd.tlm.result");
    ctx.observe("result", t->result());
    ctx.observe("status", t->status());
  }
}

OracleDomain gcd_domain() {
  OracleDomain d;
  for (uint64_t a = 1; a < 16; ++a)
    for (uint64_t b = 1; b < 16; ++b) d.push_back({{"a", a}, {"b", b}});
  return d;
}

// ---------------------------------------------------------------------
// Hash scenarios
// ---------------------------------------------------------------------

void hash_functional(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl,
                     bool tlm) {
  SimKernel k(ctx, opt.step_budget);
  Term a = ctx.make_symbol("a", 4);
  Term b = ctx.make_symbol("b", 4);
  Term a32 = zext(a, 32);
  Term b32 = zext(b, 32);

  std::optional<HashRtl> r;
  std::optional<HashTlm> t;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    r.emplace(k, opt.mutations, opt.bugs, bus);
  }
  if (tlm) t.emplace(k, opt.mutations, opt.bugs);

  auto tlm_phase = [&](SimTime duration) {
    inject_direct(t->regs, "IN_A", a32);
    inject_direct(t->regs, "IN_B", b32);
    inject_direct(t->regs, "CTRL", c32(1));
    k.notify(t->start, 1);
    run_or_stop(k, k.now() + duration);
  };
  auto rtl_phase = [&](SimTime duration) {
    inject_direct(r->regs, "IN_A", a32);
    inject_direct(r->regs, "IN_B", b32);
    inject_direct(r->regs, "CTRL", c32(1));
    run_or_stop(k, k.now() + duration);
  };

  if (rtl && tlm) {
    if (opt.cross_order == "rtl-first") {
      rtl_phase(28);
      tlm_phase(16);
    } else {
      tlm_phase(16);
      rtl_phase(28);
    }
    ctx.check_assert(eq(r->status(), c32(1)), "hash.cross.rtl_done");
    ctx.check_assert(eq(t->status(), c32(1)), "hash.cross.tlm_done");
    ctx.check_assert(eq(r->result(), t->result()), "hash.cross.result");
    ctx.observe("result_rtl", r->result());
    ctx.observe("result_tlm", t->result());
  } else if (rtl) {
    rtl_phase(28);
    ctx.check_assert(eq(r->status(), c32(1)), "hash.rtl.done");
    ctx.check_assert(eq(r->result(), hash_reference_term(a32, b32)),
                     "hash.rtl.result");
    ctx.observe("result", r->result());
    ctx.observe("status", r->status());
  } else {
    tlm_phase(16);
    ctx.check_assert(eq(t->status(), c32(1)), "hash.tlm.done");
    ctx.check_assert(eq(t->result(), hash_reference_term(a32, b32)),
                     "hash.tlm.result");
    ctx.observe("result", t->result());
    ctx.observe("status", t->status());
  }
}

OracleDomain hash_domain() {
  OracleDomain d;
  for (uint64_t a = 0; a < 16; ++a)
    for (uint64_t b = 0; b < 16; ++b) d.push_back({{"a", a}, {"b", b}});
  return d;
}

// ---------------------------------------------------------------------
// Map scenarios
// ---------------------------------------------------------------------

void map_functional(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl,
                    bool tlm) {
  SimKernel k(ctx, opt.step_budget);
  std::array<Term, 8> in;
  for (unsigned i = 0; i < 8; ++i)
    in[i] = zext(ctx.make_symbol("in" + std::to_string(i), 2), 8);
  Term m = zext(ctx.make_symbol("m", 2), 8);

  std::optional<MapRtl> r;
  std::optional<MapTlm> t;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    r.emplace(k, opt.mutations, opt.bugs, bus);
  }
  if (tlm) t.emplace(k, opt.mutations, opt.bugs);

  auto inject = [&](RegisterFile& regs) {
    for (unsigned i = 0; i < 8; ++i) regs.poke_byte(MapTlm::kIn0 + i, in[i]);
    regs.poke_byte(MapTlm::kM, m);
    regs.poke_reg("CTRL", c32(1));
  };
  auto tlm_phase = [&](SimTime duration) {
    inject(t->regs);
    k.notify(t->start, 1);
    run_or_stop(k, k.now() + duration);
  };
  auto rtl_phase = [&](SimTime duration) {
    inject(r->regs);
    run_or_stop(k, k.now() + duration);
  };

  if (rtl && tlm) {
    if (opt.cross_order == "rtl-first") {
      rtl_phase(26);
      tlm_phase(6);
    } else {
      tlm_phase(6);
      rtl_phase(26);
    }
    ctx.check_assert(eq(r->status(), c32(1)), "map.cross.rtl_done");
    ctx.check_assert(eq(t->status(), c32(1)), "map.cross.tlm_done");
    for (unsigned i = 0; i < 8; ++i)
      ctx.check_assert(eq(r->out_byte(i), t->out_byte(i)),
                       "map.cross.out" + std::to_string(i));
    ctx.observe("out0_rtl", r->out_byte(0));
    ctx.observe("out0_tlm", t->out_byte(0));
    ctx.observe("out7_rtl", r->out_byte(7));
    ctx.observe("out7_tlm", t->out_byte(7));
  } else {
    RegisterFile* regs = nullptr;
    std::string lvl = rtl ? "rtl" : "tlm";
    if (rtl) {
      rtl_phase(26);
      regs = &r->regs;
    } else {
      tlm_phase(6);
      regs = &t->regs;
    }
    Term status = rtl ? r->status() : t->status();
    ctx.check_assert(eq(status, c32(1)), "map." + lvl + ".done");
    for (unsigned i = 0; i < 8; ++i) {
      Term out = regs->peek_byte(MapTlm::kOut0 + i);
      ctx.check_assert(eq(out, map_reference_byte(in[i], m)),
                       "map." + lvl + ".out" + std::to_string(i));
      if (i == 0 || i == 7) ctx.observe("out" + std::to_string(i), out);
    }
    ctx.observe("status", status);
  }
}

OracleDomain map_domain() {
  OracleDomain d;
  auto entry = [](const std::array<uint64_t, 8>& in, uint64_t m) {
    std::map<std::string, uint64_t> e;
    for (unsigned i = 0; i < 8; ++i) e["in" + std::to_string(i)] = in[i];
    e["m"] = m;
    return e;
  };
  // Per-position value sweeps plus a few full vectors.
  for (unsigned pos = 0; pos < 8; ++pos)
    for (uint64_t v = 0; v < 4; ++v)
      for (uint64_t m = 0; m < 4; ++m) {
        std::array<uint64_t, 8> in{};
        in[pos] = v;
        d.push_back(entry(in, m));
      }
  for (uint64_t m = 0; m < 4; ++m) {
    std::array<uint64_t, 8> in;
    for (unsigned i = 0; i < 8; ++i) in[i] = i % 4;
    d.push_back(entry(in, m));
  }
  return d;
}

// ---------------------------------------------------------------------
// PLIC scenarios
// ---------------------------------------------------------------------

struct PlicPair {
  std::optional<PlicRtl> rtl;
  std::optional<PlicTlm> tlm;
};

void plic_strobe(ExecutionContext&, SimKernel& k, PlicPair& p, bool use_rtl,
                 uint64_t cmd) {
  RegisterFile& regs = use_rtl ? p.rtl->regs : p.tlm->regs;
  inject_direct(regs, "CTRL", c32(cmd));
  if (use_rtl) {
    run_or_stop(k, k.now() + 4);
  } else {
    k.notify(p.tlm->start, 1);
    run_or_stop(k, k.now() + 4);
  }
}

void plic_inject(RegisterFile& regs, const std::array<Term, 9>& prio,
                 const Term& pending32, const Term& enable32, const Term& thr32) {
  for (unsigned id = 1; id <= 8; ++id)
    regs.poke_word(PlicRtl::kPriority0 + 4 * (id - 1), prio[id]);
  regs.poke_reg("PENDING", pending32);
  regs.poke_reg("ENABLE", enable32);
  regs.poke_reg("THRESHOLD", thr32);
}

// Shared scaffold: fixed priorities except a symbolic one for source 3, a
// symbolic pending nibble over sources 1..4, and a symbolic threshold.
void plic_standalone(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl) {
  SimKernel k(ctx, opt.step_budget);
  Term pend = ctx.make_symbol("pend", 4);
  Term p3 = ctx.make_symbol("p3", 3);
  Term thr = ctx.make_symbol("thr", 3);

  PlicPair p;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    p.rtl.emplace(k, opt.mutations, opt.bugs, bus);
  } else {
    p.tlm.emplace(k, opt.mutations, opt.bugs);
  }
  RegisterFile& regs = rtl ? p.rtl->regs : p.tlm->regs;

  static const uint64_t fixed[9] = {0, 5, 3, 0, 5, 1, 7, 2, 6};
  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned id = 1; id <= 8; ++id)
    prio[id] = id == 3 ? zext(p3, 32) : c32(fixed[id]);
  Term pending32 = shl(zext(pend, 32), c32(1));
  Term enable32 = c32(0x1FE);
  Term thr32 = zext(thr, 32);
  plic_inject(regs, prio, pending32, enable32, thr32);

  plic_strobe(ctx, k, p, rtl, 1); // line -> STATUS
  plic_strobe(ctx, k, p, rtl, 2); // claim -> CLAIM, clears pending

  PlicRef ref = plic_reference(pending32, enable32, prio, thr32);
  std::string lvl = rtl ? "rtl" : "tlm";
  Term status = rtl ? p.rtl->status() : p.tlm->status();
  Term claim = rtl ? p.rtl->claim_reg() : p.tlm->claim_reg();
  Term pend_post = rtl ? p.rtl->pending_reg() : p.tlm->pending_reg();
  ctx.check_assert(eq(status, ref.line32), "plic." + lvl + ".line");
  ctx.check_assert(eq(claim, ref.claim), "plic." + lvl + ".claim");
  ctx.check_assert(eq(pend_post, ref.pending_after), "plic." + lvl + ".pending");
  ctx.observe("claim", claim);
  ctx.observe("line", status);
  ctx.observe("pending_after", pend_post);
}

OracleDomain plic_standalone_domain() {
  OracleDomain d;
  for (uint64_t pend = 0; pend < 16; ++pend)
    for (uint64_t p3 = 0; p3 < 8; ++p3)
      for (uint64_t thr = 0; thr < 8; ++thr)
        d.push_back({{"pend", pend}, {"p3", p3}, {"thr", thr}});
  return d;
}

// Focused threshold-boundary check: single pending source, symbolic
// priority and threshold.
void plic_threshold(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl) {
  SimKernel k(ctx, opt.step_budget);
  Term prio_s = ctx.make_symbol("prio", 3);
  Term thr = ctx.make_symbol("thr", 3);

  PlicPair p;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    p.rtl.emplace(k, opt.mutations, opt.bugs, bus);
  } else {
    p.tlm.emplace(k, opt.mutations, opt.bugs);
  }
  RegisterFile& regs = rtl ? p.rtl->regs : p.tlm->regs;

  std::array<Term, 9> prio;
  for (unsigned id = 0; id <= 8; ++id) prio[id] = c32(0);
  prio[3] = zext(prio_s, 32);
  Term pending32 = c32(1u << 3);
  Term thr32 = zext(thr, 32);
  plic_inject(regs, prio, pending32, c32(0x1FE), thr32);

  plic_strobe(ctx, k, p, rtl, 1);
  plic_strobe(ctx, k, p, rtl, 2);

  std::string lvl = rtl ? "rtl" : "tlm";
  Term fired = ult(thr32, zext(prio_s, 32));
  Term status = rtl ? p.rtl->status() : p.tlm->status();
  Term claim = rtl ? p.rtl->claim_reg() : p.tlm->claim_reg();
  ctx.check_assert(eq(status, zext(fired, 32)), "plic." + lvl + ".thr_line");
  ctx.check_assert(eq(claim, ite(fired, c32(3), c32(0))),
                   "plic." + lvl + ".thr_claim");
  ctx.observe("line", status);
  ctx.observe("claim", claim);
}

OracleDomain plic_threshold_domain() {
  OracleDomain d;
  for (uint64_t p = 0; p < 8; ++p)
    for (uint64_t thr = 0; thr < 8; ++thr) d.push_back({{"prio", p}, {"thr", thr}});
  return d;
}

// One-hot claim check with a symbolic source id.
void plic_claim(ExecutionContext& ctx, const ScenarioOptions& opt, bool rtl) {
  SimKernel k(ctx, opt.step_budget);
  Term id = ctx.make_symbol("irq", 4);
  ctx.assume(ule(mk_const(4, 1), id));
  ctx.assume(ule(id, mk_const(4, 8)));

  PlicPair p;
  if (rtl) {
    SignalId clk = k.make_clock("clk", 2, 50);
    RtlBus bus = RtlBus::create(k, "bus", clk);
    p.rtl.emplace(k, opt.mutations, opt.bugs, bus);
  } else {
    p.tlm.emplace(k, opt.mutations, opt.bugs);
  }
  RegisterFile& regs = rtl ? p.rtl->regs : p.tlm->regs;

  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned i = 1; i <= 8; ++i) prio[i] = c32(i);
  Term pending32 = shl(c32(1), zext(id, 32));
  plic_inject(regs, prio, pending32, c32(0x1FE), c32(0));

  plic_strobe(ctx, k, p, rtl, 1);
  plic_strobe(ctx, k, p, rtl, 2);

  std::string lvl = rtl ? "rtl" : "tlm";
  Term status = rtl ? p.rtl->status() : p.tlm->status();
  Term claim = rtl ? p.rtl->claim_reg() : p.tlm->claim_reg();
  Term pend_post = rtl ? p.rtl->pending_reg() : p.tlm->pending_reg();
  ctx.check_assert(eq(status, c32(1)), "plic." + lvl + ".hot_line");
  ctx.check_assert(eq(claim, zext(id, 32)), "plic." + lvl + ".hot_claim");
  ctx.check_assert(eq(pend_post, c32(0)), "plic." + lvl + ".hot_cleared");
  ctx.observe("claim", claim);
}

OracleDomain plic_claim_domain() {
  OracleDomain d;
  for (uint64_t id = 1; id <= 8; ++id) d.push_back({{"irq", id}});
  return d;
}

// Cross-level comparison with a priority that can exceed the 0..7 range,
// where out-of-range handling differences become visible.
void plic_cross(ExecutionContext& ctx, const ScenarioOptions& opt) {
  SimKernel k(ctx, opt.step_budget);
  Term pend = ctx.make_symbol("pend", 4);
  Term p4 = ctx.make_symbol("p4", 4);
  Term thr = ctx.make_symbol("thr", 3);

  SignalId clk = k.make_clock("clk", 2, 50);
  RtlBus bus = RtlBus::create(k, "bus", clk);
  PlicPair p;
  p.rtl.emplace(k, opt.mutations, opt.bugs, bus);
  p.tlm.emplace(k, opt.mutations, opt.bugs);

  static const uint64_t fixed[9] = {0, 5, 3, 0, 5, 1, 7, 2, 6};
  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned id = 1; id <= 8; ++id)
    prio[id] = id == 3 ? zext(p4, 32) : c32(fixed[id]);
  Term pending32 = shl(zext(pend, 32), c32(1));
  Term enable32 = c32(0x1FE);
  Term thr32 = zext(thr, 32);

  auto run_level = [&](bool rtl) {
    RegisterFile& regs = rtl ? p.rtl->regs : p.tlm->regs;
    plic_inject(regs, prio, pending32, enable32, thr32);
    plic_strobe(ctx, k, p, rtl, 1);
    plic_strobe(ctx, k, p, rtl, 2);
  };
  if (opt.cross_order == "rtl-first") {
    run_level(true);
    run_level(false);
  } else {
    run_level(false);
    run_level(true);
  }

  ctx.check_assert(eq(p.rtl->status(), p.tlm->status()), "plic.cross.line");
  ctx.check_assert(eq(p.rtl->claim_reg(), p.tlm->claim_reg()), "plic.cross.claim");
  ctx.check_assert(eq(p.rtl->pending_reg(), p.tlm->pending_reg()),
                   "plic.cross.pending");
  ctx.observe("claim_rtl", p.rtl->claim_reg());
  ctx.observe("claim_tlm", p.tlm->claim_reg());
}

OracleDomain plic_cross_domain() {
  OracleDomain d;
  for (uint64_t pend = 0; pend < 16; ++pend)
    for (uint64_t p4 = 0; p4 < 16; p4 += 1)
      for (uint64_t thr = 0; thr < 8; thr += 1)
        d.push_back({{"pend", pend}, {"p4", p4}, {"thr", thr}});
  return d;
}

// ---------------------------------------------------------------------
// Signal micro scenario (the two-symbolic-writes path-count case)
// ---------------------------------------------------------------------

void signal_two_writes(ExecutionContext& ctx, const ScenarioOptions& opt) {
  SimKernel k(ctx, opt.step_budget);
  SignalId s = k.add_signal("in", mk_const(4, 0));
  Term a = ctx.make_symbol("a", 4);
  Term b = ctx.make_symbol("b", 4);
  k.add_thread("tb", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    k.signal_write(s, a);
    k.signal_write(s, b);
    SYMX_THREAD_END(tc);
  });
  run_or_stop(k, 4);
  ctx.observe("final", k.signal_read(s));
}

OracleDomain signal_domain() {
  OracleDomain d;
  for (uint64_t a = 0; a < 16; ++a)
    for (uint64_t b = 0; b < 16; ++b) d.push_back({{"a", a}, {"b", b}});
  return d;
}

// ---------------------------------------------------------------------
// Interface scenarios: symbolic address (and data/length) over the bus,
// with post-transaction register-state assertions.
// ---------------------------------------------------------------------

struct IfaceRig {
  RegisterFile* regs = nullptr;
  std::function<TlmResponse(TlmTransaction&, TlmCheckMode)> transport;
  bool is_plic = false;
  std::optional<GcdRtl> gr;
  std::optional<HashRtl> hr;
  std::optional<MapRtl> mr;
  std::optional<PlicRtl> pr;
  std::optional<GcdTlm> gt;
  std::optional<HashTlm> ht;
  std::optional<MapTlm> mt;
  std::optional<PlicTlm> pt;
};

void make_rtl_duv(IfaceRig& rig, SimKernel& k, const ScenarioOptions& opt,
                  const std::string& peripheral, const RtlBus& bus) {
  if (peripheral == "gcd") {
    rig.gr.emplace(k, opt.mutations, opt.bugs, bus);
    rig.regs = &rig.gr->regs;
  } else if (peripheral == "hash") {
    rig.hr.emplace(k, opt.mutations, opt.bugs, bus);
    rig.regs = &rig.hr->regs;
  } else if (peripheral == "map") {
    rig.mr.emplace(k, opt.mutations, opt.bugs, bus);
    rig.regs = &rig.mr->regs;
  } else {
    rig.pr.emplace(k, opt.mutations, opt.bugs, bus);
    rig.regs = &rig.pr->regs;
    rig.is_plic = true;
  }
}

void make_tlm_duv(IfaceRig& rig, SimKernel& k, const ScenarioOptions& opt,
                  const std::string& peripheral) {
  if (peripheral == "gcd") {
    rig.gt.emplace(k, opt.mutations, opt.bugs);
    rig.regs = &rig.gt->regs;
    rig.transport = [&r = *rig.gt](TlmTransaction& t, TlmCheckMode m) {
      return r.transport(t, m);
    };
  } else if (peripheral == "hash") {
    rig.ht.emplace(k, opt.mutations, opt.bugs);
    rig.regs = &rig.ht->regs;
    rig.transport = [&r = *rig.ht](TlmTransaction& t, TlmCheckMode m) {
      return r.transport(t, m);
    };
  } else if (peripheral == "map") {
    rig.mt.emplace(k, opt.mutations, opt.bugs);
    rig.regs = &rig.mt->regs;
    rig.transport = [&r = *rig.mt](TlmTransaction& t, TlmCheckMode m) {
      return r.transport(t, m);
    };
  } else {
    rig.pt.emplace(k, opt.mutations, opt.bugs);
    rig.regs = &rig.pt->regs;
    rig.is_plic = true;
    rig.transport = [&r = *rig.pt](TlmTransaction& t, TlmCheckMode m) {
      return r.transport(t, m);
    };
  }
}

unsigned iface_addr_bits(const RegisterFile& regs) {
  return regs.size() <= 32 ? 6 : 7;
}

std::array<Term, 9> plic_pre_priorities(RegisterFile& regs) {
  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned id = 1; id <= 8; ++id)
    prio[id] = regs.peek_word(PlicRtl::kPriority0 + 4 * (id - 1));
  return prio;
}

void iface_rtl(ExecutionContext& ctx, const ScenarioOptions& opt,
               const std::string& peripheral, bool write_kind) {
  SimKernel k(ctx, opt.step_budget);
  SignalId clk = k.make_clock("clk", 2, 50);
  RtlBus bus = RtlBus::create(k, "bus", clk);
  IfaceRig rig;
  make_rtl_duv(rig, k, opt, peripheral, bus);
  RegisterFile& regs = *rig.regs;

  Term addr = zext(ctx.make_symbol("addr", iface_addr_bits(regs)), 8);
  Term wd = write_kind ? zext(ctx.make_symbol("wd", 4), 32) : Term();

  // Pre-state snapshot, word by word.
  std::vector<std::pair<const RegSpec*, std::vector<Term>>> pre;
  for (const auto& reg : regs.layout()) {
    std::vector<Term> words;
    for (uint32_t w = 0; w < reg.bytes; w += 4)
      words.push_back(regs.peek_word(reg.offset + w));
    pre.emplace_back(&reg, std::move(words));
  }
  PlicRef plic_ref;
  Term pre_pending;
  if (rig.is_plic) {
    pre_pending = regs.peek_reg("PENDING");
    plic_ref = plic_reference(pre_pending, regs.peek_reg("ENABLE"),
                              plic_pre_priorities(regs), regs.peek_reg("THRESHOLD"));
  }

  k.add_thread("tb.drive", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    k.signal_write(bus.addr, addr);
    if (write_kind) {
      k.signal_write(bus.wdata, wd);
      k.signal_write(bus.we, mk_const(1, 1));
    } else {
      k.signal_write(bus.re, mk_const(1, 1));
    }
    SYMX_WAIT_TIME(tc, 3);
    k.signal_write(write_kind ? bus.we : bus.re, mk_const(1, 0));
    SYMX_THREAD_END(tc);
  });
  // One transaction edge at t=2; stop before the next edge so only the bus
  // transaction itself touches the registers.
  run_or_stop(k, 3);

  Term base = and_(addr, c8(0xFC));
  std::string prefix = peripheral + ".rtl.iface.";

  if (write_kind) {
    for (const auto& [reg, words] : pre) {
      for (size_t w = 0; w < words.size(); ++w) {
        uint32_t off = reg->offset + 4 * static_cast<uint32_t>(w);
        Term post = regs.peek_word(off);
        Term hit = reg->access == Access::RW ? eq(base, c8(off)) : mk_const(1, 0);
        ctx.check_assert(or_(hit, eq(post, words[w])),
                         prefix + "untouched." + reg->name);
        if (reg->access == Access::RW)
          ctx.check_assert(or_(not_(hit), eq(post, wd)),
                           prefix + "applied." + reg->name);
      }
    }
    ctx.observe("base", base);
  } else {
    Term rdata = k.signal_read(bus.rdata);
    Term expected = c32(0);
    for (const auto& [reg, words] : pre) {
      if (rig.is_plic && reg->offset == PlicRtl::kClaim) continue;
      for (size_t w = 0; w < words.size(); ++w) {
        uint32_t off = reg->offset + 4 * static_cast<uint32_t>(w);
        expected = ite(eq(base, c8(off)), words[w], expected);
      }
    }
    if (rig.is_plic) {
      Term claim_hit = eq(base, c8(PlicRtl::kClaim));
      expected = ite(claim_hit, plic_ref.claim, expected);
      Term post_pending = regs.peek_reg("PENDING");
      ctx.check_assert(or_(claim_hit, eq(post_pending, pre_pending)),
                       prefix + "pending_pure");
      ctx.check_assert(or_(not_(claim_hit), eq(post_pending, plic_ref.pending_after)),
                       prefix + "pending_claimed");
    }
    // Reads leave every other register alone.
    for (const auto& [reg, words] : pre) {
      if (rig.is_plic && reg->name == "PENDING") continue;
      for (size_t w = 0; w < words.size(); ++w) {
        uint32_t off = reg->offset + 4 * static_cast<uint32_t>(w);
        ctx.check_assert(eq(regs.peek_word(off), words[w]),
                         prefix + "read_pure." + reg->name);
      }
    }
    ctx.check_assert(eq(rdata, expected), prefix + "rdata");
    ctx.observe("rdata", rdata);
  }
}

void iface_tlm(ExecutionContext& ctx, const ScenarioOptions& opt,
               const std::string& peripheral, bool write_kind) {
  SimKernel k(ctx, opt.step_budget);
  IfaceRig rig;
  make_tlm_duv(rig, k, opt, peripheral);
  RegisterFile& regs = *rig.regs;

  Term addr = zext(ctx.make_symbol("addr", iface_addr_bits(regs)), 8);
  Term len_s = ctx.make_symbol("len", 3);

  TlmTransaction t;
  t.cmd = write_kind ? TlmCmd::Write : TlmCmd::Read;
  t.addr = addr;
  if (ctx.branch(eq(len_s, mk_const(3, 1))))
    t.length = 1;
  else if (ctx.branch(eq(len_s, mk_const(3, 2))))
    t.length = 2;
  else if (ctx.branch(eq(len_s, mk_const(3, 4))))
    t.length = 4;
  else
    t.length = 3; // representative invalid length class

  std::vector<Term> data;
  if (write_kind) {
    for (unsigned i = 0; i < 4; ++i)
      data.push_back(zext(ctx.make_symbol("d" + std::to_string(i), 1), 8));
    t.data.assign(data.begin(), data.begin() + t.length);
  }

  // Pre-state snapshot: words for purity, the backing for read-data checks.
  std::vector<std::pair<const RegSpec*, std::vector<Term>>> pre;
  for (const auto& reg : regs.layout()) {
    std::vector<Term> words;
    for (uint32_t w = 0; w < reg.bytes; w += 4)
      words.push_back(regs.peek_word(reg.offset + w));
    pre.emplace_back(&reg, std::move(words));
  }
  SymArray pre_mem = regs.backing();
  PlicRef plic_ref;
  Term pre_pending;
  if (rig.is_plic) {
    pre_pending = regs.peek_reg("PENDING");
    plic_ref = plic_reference(pre_pending, regs.peek_reg("ENABLE"),
                              plic_pre_priorities(regs), regs.peek_reg("THRESHOLD"));
  }

  rig.transport(t, TlmCheckMode::AssertStyle);

  std::string prefix = peripheral + ".tlm.iface.";
  Term a16 = zext(addr, 16);
  Term end16 = add(a16, mk_const(16, t.length));

  bool claim_path = false;
  if (rig.is_plic && t.length == 4)
    claim_path = ctx.branch(eq(addr, c8(PlicTlm::kClaim)));

  if (claim_path) {
    if (write_kind) {
      // Completion: no register effects at all.
      for (const auto& [reg, words] : pre)
        for (size_t w = 0; w < words.size(); ++w)
          ctx.check_assert(
              eq(regs.peek_word(reg->offset + 4 * static_cast<uint32_t>(w)), words[w]),
              prefix + "complete_pure." + reg->name);
    } else {
      Term got = concat(concat(t.data[3], t.data[2]), concat(t.data[1], t.data[0]));
      ctx.check_assert(eq(got, plic_ref.claim), prefix + "claim_data");
      ctx.check_assert(eq(regs.peek_reg("PENDING"), plic_ref.pending_after),
                       prefix + "claim_clears");
    }
    ctx.observe("addr", addr);
    return;
  }

  if (write_kind) {
    for (const auto& [reg, words] : pre) {
      for (size_t w = 0; w < words.size(); ++w) {
        uint32_t off = reg->offset + 4 * static_cast<uint32_t>(w);
        Term post = regs.peek_word(off);
        Term disjoint =
            or_(ule(end16, mk_const(16, off)), ule(mk_const(16, off + 4), a16));
        ctx.check_assert(or_(not_(disjoint), eq(post, words[w])),
                         prefix + "untouched." + reg->name);
        if (reg->access != Access::RW) continue;
        for (uint32_t j = 0; j < 4; ++j) {
          Term b16 = mk_const(16, off + j);
          Term inside = and_(ule(a16, b16), ult(b16, end16));
          Term expected = c8(0);
          for (unsigned i = 0; i < t.length; ++i)
            expected = ite(eq(b16, add(a16, mk_const(16, i))), t.data[i], expected);
          ctx.check_assert(
              or_(not_(inside), eq(regs.peek_byte(off + j), expected)),
              prefix + "applied." + reg->name);
        }
      }
    }
  } else {
    for (unsigned i = 0; i < t.length; ++i) {
      Term idx = i ? add(addr, c8(i)) : addr;
      Term expect = ctx.array_read(pre_mem, idx);
      ctx.check_assert(eq(t.data.at(i), expect),
                       prefix + "data" + std::to_string(i));
    }
    for (const auto& [reg, words] : pre)
      for (size_t w = 0; w < words.size(); ++w)
        ctx.check_assert(
            eq(regs.peek_word(reg->offset + 4 * static_cast<uint32_t>(w)), words[w]),
            prefix + "read_pure." + reg->name);
  }
  ctx.observe("addr", addr);
}

// ---------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------

Scenario make(const std::string& name, const std::string& kind,
              const std::string& peripheral, const std::string& desc,
              ScenarioBody body, std::function<OracleDomain()> domain,
              uint64_t step_budget = 100000) {
  Scenario s;
  s.name = name;
  s.kind = kind;
  s.peripheral = peripheral;
  s.description = desc;
  s.body = std::move(body);
  s.oracle_domain = domain ? std::move(domain) : [] { return OracleDomain{}; };
  s.default_step_budget = step_budget;
  return s;
}

std::vector<Scenario> build_scenarios() {
  std::vector<Scenario> v;

  v.push_back(make(
      "signal-two-writes", "micro", "signal",
      "two symbolic writes to one signal; the differ check forks four paths",
      [](ExecutionContext& ctx, const ScenarioOptions& o) { signal_two_writes(ctx, o); },
      signal_domain, 1000));

  v.push_back(make(
      "gcd-rtl-standalone", "standalone-rtl", "gcd",
      "clocked subtractive gcd vs the division-based reference",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        gcd_functional(ctx, o, true, false);
      },
      gcd_domain, 2000));
  v.push_back(make(
      "gcd-tlm-standalone", "standalone-tlm", "gcd",
      "timed-thread subtractive gcd vs the division-based reference",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        gcd_functional(ctx, o, false, true);
      },
      gcd_domain, 120));
  v.push_back(make(
      "gcd-cross-4bit", "cross-level", "gcd",
      "RTL and TLM gcd co-executed on identical 4-bit symbolic inputs",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        gcd_functional(ctx, o, true, true);
      },
      gcd_domain, 2000));

  v.push_back(make(
      "hash-rtl-standalone", "standalone-rtl", "hash",
      "8-cycle hash datapath vs the reference formula",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        hash_functional(ctx, o, true, false);
      },
      hash_domain, 2000));
  v.push_back(make(
      "hash-tlm-standalone", "standalone-tlm", "hash",
      "hash thread vs the identically-structured reference",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        hash_functional(ctx, o, false, true);
      },
      hash_domain, 400));
  v.push_back(make(
      "hash-cross", "cross-level", "hash",
      "RTL vs TLM hash equality on identical symbolic inputs",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        hash_functional(ctx, o, true, true);
      },
      hash_domain, 2000));

  v.push_back(make(
      "map-rtl-standalone", "standalone-rtl", "map",
      "byte-per-cycle mapper vs the reference byte function",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        map_functional(ctx, o, true, false);
      },
      map_domain, 2000));
  v.push_back(make(
      "map-tlm-standalone", "standalone-tlm", "map",
      "single-call mapper vs the identically-structured reference",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        map_functional(ctx, o, false, true);
      },
      map_domain, 400));
  v.push_back(make(
      "map-cross", "cross-level", "map",
      "RTL vs TLM mapper equality over all eight output bytes",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        map_functional(ctx, o, true, true);
      },
      map_domain, 2000));

  v.push_back(make(
      "plic-rtl-standalone", "standalone-rtl", "plic",
      "claim/line vs reference with symbolic pending, priority, threshold",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        plic_standalone(ctx, o, true);
      },
      plic_standalone_domain, 2000));
  v.push_back(make(
      "plic-tlm-standalone", "standalone-tlm", "plic",
      "claim/line vs reference with symbolic pending, priority, threshold",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        plic_standalone(ctx, o, false);
      },
      plic_standalone_domain, 2000));
  v.push_back(make(
      "plic-rtl-threshold", "standalone-rtl", "plic",
      "strict threshold boundary with one pending source",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        plic_threshold(ctx, o, true);
      },
      plic_threshold_domain, 2000));
  v.push_back(make(
      "plic-tlm-threshold", "standalone-tlm", "plic",
      "strict threshold boundary with one pending source",
      [](ExecutionContext& ctx, const ScenarioOptions& o) {
        plic_threshold(ctx, o, false);
      },
      plic_threshold_domain, 2000));
  v.push_back(make(
      "plic-rtl-claim", "standalone-rtl", "plic",
      "one-hot pending with a symbolic source id; claim returns and clears it",
      [](ExecutionContext& ctx, const ScenarioOptions& o) { plic_claim(ctx, o, true); },
      plic_claim_domain, 2000));
  v.push_back(make(
      "plic-tlm-claim", "standalone-tlm", "plic",
      "one-hot pending with a symbolic source id; claim returns and clears it",
      [](ExecutionContext& ctx, const ScenarioOptions& o) { plic_claim(ctx, o, false); },
      plic_claim_domain, 2000));
  v.push_back(make(
      "plic-cross", "cross-level", "plic",
      "cross-level claim/line with priorities allowed past the 0..7 range",
      [](ExecutionContext& ctx, const ScenarioOptions& o) { plic_cross(ctx, o); },
      plic_cross_domain, 2000));

  for (const std::string p : {"gcd", "hash", "map", "plic"}) {
    for (const std::string lvl : {"rtl", "tlm"}) {
      for (bool wr : {false, true}) {
        std::string kind = wr ? "iface-write" : "iface-read";
        v.push_back(make(
            p + "-" + lvl + "-iface-" + (wr ? "write" : "read"), kind, p,
            "symbolic-" + std::string(wr ? "write" : "read") +
                " bus transaction with post-transaction register assertions",
            [p, lvl, wr](ExecutionContext& ctx, const ScenarioOptions& o) {
              if (lvl == "rtl")
                iface_rtl(ctx, o, p, wr);
              else
                iface_tlm(ctx, o, p, wr);
            },
            nullptr, 2000));
      }
    }
  }

  return v;
}

} // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = build_scenarios();
  return all;
}

const Scenario* find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

ExploreResult run_scenario(const Scenario& s, ExploreConfig cfg,
                           ScenarioOptions opts) {
  // The library default means "use the scenario's own budget".
  if (cfg.step_budget == ExploreConfig{}.step_budget)
    cfg.step_budget = s.default_step_budget;
  opts.step_budget = cfg.step_budget;
  Engine eng(cfg);
  ExploreResult res = eng.explore(
      s.name, [&s, &opts](ExecutionContext& ctx) { s.body(ctx, opts); });
  res.report.config["scenario"] = s.name;
  for (const auto& b : opts.bugs.names()) res.report.config["bug"] += b + " ";
  return res;
}

ConcreteContext::Outcome run_concrete(const Scenario& s, const ScenarioOptions& opts,
                                      const std::map<std::string, uint64_t>& inputs) {
  ScenarioOptions local = opts;
  if (local.step_budget == ScenarioOptions{}.step_budget)
    local.step_budget = s.default_step_budget;
  ConcreteContext cc(inputs);
  try {
    s.body(cc, local);
    cc.mark_completed();
  } catch (const PathStop&) {
  }
  return cc.outcome();
}

void inject_direct(RegisterFile& regs, const std::string& reg, const Term& value) {
  regs.poke_reg(reg, value);
}

} // namespace symx::harness
