// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/hash.hpp"

#include "symx/duv/busfront.hpp"

namespace symx::duv {

namespace {

std::vector<RegSpec> hash_layout() {
  return {
      {"IN_A", 0x00, 4, Access::RW},  {"IN_B", 0x04, 4, Access::RW},
      {"CTRL", 0x08, 4, Access::RW},  {"STATUS", 0x0C, 4, Access::RO},
      {"RESULT", 0x10, 4, Access::RO},
  };
}

constexpr size_t kHashRegSize = 32;
constexpr uint64_t kHashSeed = 0x12345678;

Term c32(uint64_t v) { return mk_const(32, v); }

} // namespace

Term hash_reference_term(const Term& a32, const Term& b32) {
  Term h = c32(kHashSeed);
  for (uint64_t r = 0; r < 8; ++r) {
    Term x = xor_(h, a32);
    Term rot = or_(shl(x, c32(5)), lshr(x, c32(27)));
    h = add(rot, add(b32, c32(r)));
  }
  return h;
}

std::vector<RegSpec> HashRtl::reg_layout() { return hash_layout(); }
std::vector<RegSpec> HashTlm::reg_layout() { return hash_layout(); }

HashRtl::HashRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs,
                 const RtlBus& bus)
    : regs(k.ctx(), "hash.rtl", 8, kHashRegSize, hash_layout()), k_(k),
      ops_(k.ctx(), mut, "hash", "rtl"), bus_(bus), h_(c32(0)), a_(c32(0)),
      b_(c32(0)) {
  (void)bugs;
  addr_in_ = k.add_port("hash.rtl.addr");
  k.bind(addr_in_, bus.addr);
  wdata_in_ = k.add_port("hash.rtl.wdata");
  k.bind(wdata_in_, bus.wdata);
  we_in_ = k.add_port("hash.rtl.we");
  k.bind(we_in_, bus.we);
  re_in_ = k.add_port("hash.rtl.re");
  k.bind(re_in_, bus.re);

  ProcessId p = k.add_method("hash.rtl.clk", [this] { on_clock(); }, false);
  k.sensitive(p, bus.clk, Edge::Pos);
}

void HashRtl::bus_cycle() {
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
    if (ctx.branch(ult(base, mk_const(8, kHashRegSize))))
      rdata = regs.read_word(base, "hash.rtl.bus_read");
    k_.signal_write(bus_.rdata, rdata);
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else {
    k_.signal_write(bus_.ready, mk_const(1, 0));
  }
}

void HashRtl::on_clock() {
  ExecutionContext& ctx = k_.ctx();
  if (!busy_) {
    Term ctrl = regs.peek_reg("CTRL");
    if (ctx.branch(ops_.op("start_eq", OpTag::Eq, ctrl, c32(1)))) {
      h_ = c32(kHashSeed);
      a_ = regs.peek_reg("IN_A");
      b_ = regs.peek_reg("IN_B");
      round_ = 0;
      busy_ = true;
      regs.poke_reg("CTRL", c32(0));
      regs.poke_reg("STATUS", c32(0));
    }
  } else if (round_ < 8) {
    // One round per edge; shift amount for the rotate computed in the
    // datapath, additions associated (rot + b) + r.
    Term x = ops_.op("round_xor", OpTag::Xor, h_, a_);
    Term amt = ops_.op("amt_sub", OpTag::Sub, c32(32), c32(5));
    Term rot = ops_.op("rot_or", OpTag::Or,
                       ops_.op("rot_shl", OpTag::Shl, x, c32(5)),
                       ops_.op("rot_lshr", OpTag::Lshr, x, amt));
    h_ = ops_.op("r_add", OpTag::Add, ops_.op("acc_add", OpTag::Add, rot, b_),
                 c32(round_));
    ++round_;
  } else {
    regs.poke_reg("RESULT", h_);
    regs.poke_reg("STATUS", c32(1));
    busy_ = false;
  }
  bus_cycle();
}

HashTlm::HashTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs)
    : regs(k.ctx(), "hash.tlm", 8, kHashRegSize, hash_layout()), k_(k),
      ops_(k.ctx(), mut, "hash", "tlm"), h_(c32(0)), a_(c32(0)), b_(c32(0)),
      r_(c32(0)) {
  (void)bugs;
  start = k.add_event("hash.tlm.start");
  k.add_thread("hash.tlm.run", [this](ThreadCtx& tc) { body(tc); });
}

void HashTlm::body(ThreadCtx& tc) {
  ExecutionContext& ctx = k_.ctx();
  SYMX_THREAD_BEGIN(tc);
  for (;;) {
    SYMX_WAIT_EVENT(tc, start);
    if (!ctx.branch(
            ops_.op("start_eq", OpTag::Eq, regs.peek_reg("CTRL"), c32(1))))
      continue;
    h_ = c32(kHashSeed);
    a_ = regs.peek_reg("IN_A");
    b_ = regs.peek_reg("IN_B");
    r_ = c32(0);
    regs.poke_reg("CTRL", c32(0));
    regs.poke_reg("STATUS", c32(0));
    while (ctx.branch(ops_.op("round_lt", OpTag::Ult, r_, c32(8)))) {
      {
        Term x = ops_.op("round_xor", OpTag::Xor, h_, a_);
        Term rot = ops_.op("rot_or", OpTag::Or,
                           ops_.op("rot_shl", OpTag::Shl, x, c32(5)),
                           ops_.op("rot_lshr", OpTag::Lshr, x, c32(27)));
        h_ = ops_.op("round_add", OpTag::Add, rot,
                     ops_.op("addend_add", OpTag::Add, b_, r_));
        r_ = ops_.op("round_inc", OpTag::Add, r_, c32(1));
      }
      SYMX_WAIT_TIME(tc, 1);
    }
    regs.poke_reg("RESULT", h_);
    regs.poke_reg("STATUS", c32(1));
  }
  SYMX_THREAD_END(tc);
}

TlmResponse HashTlm::transport(TlmTransaction& t, TlmCheckMode mode) {
  TlmFrontConfig cfg;
  cfg.prefix = "hash.tlm";
  if (!tlm_front_validate(k_.ctx(), regs, t, mode, cfg)) return t.response;
  if (t.cmd == TlmCmd::Write) {
    tlm_write_bytes(regs, t, "hash.tlm.bus_write");
    k_.notify(start, 1);
  } else {
    tlm_read_bytes(regs, t, "hash.tlm.bus_read");
  }
  t.response = TlmResponse::Ok;
  return t.response;
}

} // namespace symx::duv
