// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/gcd.hpp"

#include "symx/duv/busfront.hpp"

namespace symx::duv {

namespace {

std::vector<RegSpec> gcd_layout() {
  return {
      {"IN_A", 0x00, 4, Access::RW},  {"IN_B", 0x04, 4, Access::RW},
      {"CTRL", 0x08, 4, Access::RW},  {"STATUS", 0x0C, 4, Access::RO},
      {"RESULT", 0x10, 4, Access::RO},
  };
}

constexpr size_t kGcdRegSize = 32;

// One subtraction step. Returns false once a == b.
bool gcd_iterate(ExecutionContext& ctx, OpBuilder& ops, Term& a, Term& b,
                 bool signed_cmp) {
  if (!ctx.branch(ops.op("loop_ne", OpTag::Ne, a, b))) return false;
  OpTag cmp = signed_cmp ? OpTag::Slt : OpTag::Ult;
  if (ctx.branch(ops.op("swap_cmp", cmp, b, a)))
    a = ops.op("sub_a", OpTag::Sub, a, b);
  else
    b = ops.op("sub_b", OpTag::Sub, b, a);
  return true;
}

} // namespace

std::vector<RegSpec> GcdRtl::reg_layout() { return gcd_layout(); }
std::vector<RegSpec> GcdTlm::reg_layout() { return gcd_layout(); }

GcdRtl::GcdRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs,
               const RtlBus& bus)
    : regs(k.ctx(), "gcd.rtl", 8, kGcdRegSize, gcd_layout()), k_(k),
      ops_(k.ctx(), mut, "gcd", "rtl"), bus_(bus),
      a_(mk_const(kDataWidth, 0)), b_(mk_const(kDataWidth, 0)) {
  (void)bugs; // the seeded gcd bugs live on the TLM side and the testbench
  addr_in_ = k.add_port("gcd.rtl.addr");
  k.bind(addr_in_, bus.addr);
  wdata_in_ = k.add_port("gcd.rtl.wdata");
  k.bind(wdata_in_, bus.wdata);
  we_in_ = k.add_port("gcd.rtl.we");
  k.bind(we_in_, bus.we);
  re_in_ = k.add_port("gcd.rtl.re");
  k.bind(re_in_, bus.re);

  ProcessId p = k.add_method("gcd.rtl.clk", [this] { on_clock(); }, false);
  k.sensitive(p, bus.clk, Edge::Pos);
}

void GcdRtl::bus_cycle() {
  ExecutionContext& ctx = k_.ctx();
  Term we = k_.port_read(we_in_);
  Term re = k_.port_read(re_in_);
  if (ctx.branch(eq(we, mk_const(1, 1)))) {
    Term base = and_(k_.port_read(addr_in_), mk_const(8, 0xFC));
    rtl_write_all_rw(regs, base, k_.port_read(wdata_in_));
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else if (ctx.branch(eq(re, mk_const(1, 1)))) {
    Term base = and_(k_.port_read(addr_in_), mk_const(8, 0xFC));
    Term rdata = mk_const(32, 0);
    if (ctx.branch(ult(base, mk_const(8, kGcdRegSize))))
      rdata = regs.read_word(base, "gcd.rtl.bus_read");
    k_.signal_write(bus_.rdata, rdata);
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else {
    k_.signal_write(bus_.ready, mk_const(1, 0));
  }
}

void GcdRtl::on_clock() {
  // The state machine samples pre-edge register state; bus writes land
  // after it, becoming visible at the next edge.
  ExecutionContext& ctx = k_.ctx();
  if (!busy_) {
    Term ctrl = regs.peek_reg("CTRL");
    if (ctx.branch(ops_.op("start_eq", OpTag::Eq, ctrl, mk_const(32, 1)))) {
      a_ = extract(regs.peek_reg("IN_A"), kDataWidth - 1, 0);
      b_ = extract(regs.peek_reg("IN_B"), kDataWidth - 1, 0);
      busy_ = true;
      regs.poke_reg("CTRL", mk_const(32, 0));
      regs.poke_reg("STATUS", mk_const(32, 0));
    }
  } else if (!gcd_iterate(ctx, ops_, a_, b_, false)) {
    regs.poke_reg("RESULT", zext(a_, 32));
    regs.poke_reg("STATUS", mk_const(32, 1));
    busy_ = false;
  }
  bus_cycle();
}

GcdTlm::GcdTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs)
    : regs(k.ctx(), "gcd.tlm", 8, kGcdRegSize, gcd_layout()), k_(k),
      ops_(k.ctx(), mut, "gcd", "tlm"), bug_signed_(bugs.has("gcd-signed-cmp")),
      a_(mk_const(kDataWidth, 0)), b_(mk_const(kDataWidth, 0)) {
  start = k.add_event("gcd.tlm.start");
  k.add_thread("gcd.tlm.run", [this](ThreadCtx& tc) { body(tc); });
}

void GcdTlm::body(ThreadCtx& tc) {
  ExecutionContext& ctx = k_.ctx();
  SYMX_THREAD_BEGIN(tc);
  for (;;) {
    SYMX_WAIT_EVENT(tc, start);
    if (!ctx.branch(
            ops_.op("start_eq", OpTag::Eq, regs.peek_reg("CTRL"), mk_const(32, 1))))
      continue;
    a_ = extract(regs.peek_reg("IN_A"), kDataWidth - 1, 0);
    b_ = extract(regs.peek_reg("IN_B"), kDataWidth - 1, 0);
    regs.poke_reg("CTRL", mk_const(32, 0));
    regs.poke_reg("STATUS", mk_const(32, 0));
    while (gcd_iterate(ctx, ops_, a_, b_, bug_signed_)) {
      SYMX_WAIT_TIME(tc, 1);
    }
    regs.poke_reg("RESULT", zext(a_, 32));
    regs.poke_reg("STATUS", mk_const(32, 1));
  }
  SYMX_THREAD_END(tc);
}

TlmResponse GcdTlm::transport(TlmTransaction& t, TlmCheckMode mode) {
  TlmFrontConfig cfg;
  cfg.prefix = "gcd.tlm";
  if (!tlm_front_validate(k_.ctx(), regs, t, mode, cfg)) return t.response;
  if (t.cmd == TlmCmd::Write) {
    tlm_write_bytes(regs, t, "gcd.tlm.bus_write");
    // A write that lands on CTRL kicks the computation thread.
    k_.notify(start, 1);
  } else {
    tlm_read_bytes(regs, t, "gcd.tlm.bus_read");
  }
  t.response = TlmResponse::Ok;
  return t.response;
}

} // namespace symx::duv
