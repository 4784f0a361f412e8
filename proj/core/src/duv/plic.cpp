// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/plic.hpp"

#include "symx/duv/busfront.hpp"

namespace symx::duv {

namespace {

std::vector<RegSpec> plic_layout() {
  std::vector<RegSpec> regs;
  for (unsigned id = 1; id <= 8; ++id)
    regs.push_back({"PRIORITY" + std::to_string(id), 4 * (id - 1), 4, Access::RW});
  regs.push_back({"PENDING", 0x20, 4, Access::RO});
  regs.push_back({"ENABLE", 0x24, 4, Access::RW});
  regs.push_back({"THRESHOLD", 0x28, 4, Access::RW});
  // Claim reads have side effects and claim writes (complete) change no
  // register, so the window stays out of the generic RW write path.
  regs.push_back({"CLAIM", 0x2C, 4, Access::RO});
  regs.push_back({"STATUS", 0x30, 4, Access::RO});
  regs.push_back({"CTRL", 0x34, 4, Access::RW});
  return regs;
}

constexpr size_t kPlicRegSize = 64;

Term c32(uint64_t v) { return mk_const(32, v); }

} // namespace

PlicTerms plic_compute(OpBuilder& ops, bool descending, bool bug_inverted_threshold,
                       bool bug_clamp, const Term& pending32, const Term& enable32,
                       const std::array<Term, 9>& prio32, const Term& threshold32) {
  Term line = c32(0);
  Term best_prio = c32(0);
  Term best_id = c32(0);

  for (unsigned n = 0; n < 8; ++n) {
    unsigned id = descending ? 8 - n : n + 1;
    Term idc = c32(id);
    Term pb = ops.op("pend_and", OpTag::And,
                     ops.op("pend_shr", OpTag::Lshr, pending32, idc), c32(1));
    Term eb = ops.op("en_and", OpTag::And,
                     ops.op("en_shr", OpTag::Lshr, enable32, idc), c32(1));
    Term gate = ops.op("gate_and", OpTag::And, pb, eb);

    Term prio = prio32[id];
    if (bug_clamp) prio = ite(ult(c32(7), prio), c32(7), prio);

    Term above = bug_inverted_threshold
                     ? ops.op("thr_cmp", OpTag::Ule, prio, threshold32)
                     : ops.op("thr_cmp", OpTag::Ult, threshold32, prio);
    Term elig = ops.op("elig_and", OpTag::And, gate, zext(above, 32));

    Term better = descending ? ops.op("best_cmp", OpTag::Ule, best_prio, prio)
                             : ops.op("best_cmp", OpTag::Ult, best_prio, prio);
    Term take = ops.op("take_and", OpTag::And, elig, zext(better, 32));
    Term t1 = extract(take, 0, 0);
    best_prio = ite(t1, prio, best_prio);
    best_id = ite(t1, idc, best_id);
    line = ops.op("line_or", OpTag::Or, line, elig);
  }

  PlicTerms out;
  out.claim_id = best_id;
  out.line = line;
  Term mask = not_(ops.op("clr_shl", OpTag::Shl, c32(1), best_id));
  out.pending_after = ops.op("clr_and", OpTag::And, pending32, mask);
  return out;
}

std::vector<RegSpec> PlicRtl::reg_layout() { return plic_layout(); }
std::vector<RegSpec> PlicTlm::reg_layout() { return plic_layout(); }

PlicRtl::PlicRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs,
                 const RtlBus& bus)
    : regs(k.ctx(), "plic.rtl", 8, kPlicRegSize, plic_layout()), k_(k),
      ops_(k.ctx(), mut, "plic", "rtl"), bus_(bus),
      bug_inv_(bugs.has("plic-threshold-inversion")),
      bug_clamp_(bugs.has("plic-prio-clamp-divergence")) {
  addr_in_ = k.add_port("plic.rtl.addr");
  k.bind(addr_in_, bus.addr);
  wdata_in_ = k.add_port("plic.rtl.wdata");
  k.bind(wdata_in_, bus.wdata);
  we_in_ = k.add_port("plic.rtl.we");
  k.bind(we_in_, bus.we);
  re_in_ = k.add_port("plic.rtl.re");
  k.bind(re_in_, bus.re);

  ProcessId p = k.add_method("plic.rtl.clk", [this] { on_clock(); }, false);
  k.sensitive(p, bus.clk, Edge::Pos);
}

PlicTerms PlicRtl::compute() {
  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned id = 1; id <= 8; ++id)
    prio[id] = regs.peek_word(kPriority0 + 4 * (id - 1));
  return plic_compute(ops_, false, bug_inv_, bug_clamp_, regs.peek_reg("PENDING"),
                      regs.peek_reg("ENABLE"), prio, regs.peek_reg("THRESHOLD"));
}

void PlicRtl::bus_cycle() {
  ExecutionContext& ctx = k_.ctx();
  Term we = k_.port_read(we_in_);
  Term re = k_.port_read(re_in_);
  if (ctx.branch(eq(we, mk_const(1, 1)))) {
    Term base = and_(k_.port_read(addr_in_), mk_const(8, 0xFC));
    rtl_write_all_rw(regs, base, k_.port_read(wdata_in_));
    // A claim-window write is a completion; no register changes.
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else if (ctx.branch(eq(re, mk_const(1, 1)))) {
    Term base = and_(k_.port_read(addr_in_), mk_const(8, 0xFC));
    Term rdata = mk_const(32, 0);
    if (ctx.branch(eq(base, mk_const(8, kClaim)))) {
      PlicTerms t = compute();
      rdata = t.claim_id;
      regs.poke_reg("PENDING", t.pending_after);
    } else if (ctx.branch(ult(base, mk_const(8, 0x20)))) {
      // Priority block, read at the symbolic base.
      rdata = regs.read_word(base, "plic.rtl.bus_read");
    } else if (ctx.branch(ult(base, mk_const(8, 0x38)))) {
      rdata = regs.read_word(base, "plic.rtl.bus_read");
    }
    k_.signal_write(bus_.rdata, rdata);
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else {
    k_.signal_write(bus_.ready, mk_const(1, 0));
  }
}

void PlicRtl::on_clock() {
  ExecutionContext& ctx = k_.ctx();
  Term ctrl = regs.peek_reg("CTRL");
  if (ctx.branch(ops_.op("cmd_line_eq", OpTag::Eq, ctrl, c32(1)))) {
    PlicTerms t = compute();
    regs.poke_reg("STATUS", t.line);
    regs.poke_reg("CTRL", c32(0));
  } else if (ctx.branch(ops_.op("cmd_claim_eq", OpTag::Eq, ctrl, c32(2)))) {
    PlicTerms t = compute();
    regs.poke_reg("CLAIM", t.claim_id);
    regs.poke_reg("PENDING", t.pending_after);
    regs.poke_reg("CTRL", c32(0));
  }
  bus_cycle();
}

PlicTlm::PlicTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs)
    : regs(k.ctx(), "plic.tlm", 8, kPlicRegSize, plic_layout()), k_(k),
      ops_(k.ctx(), mut, "plic", "tlm") {
  (void)bugs; // the seeded plic bugs live on the RTL side
  start = k.add_event("plic.tlm.start");
  k.add_thread("plic.tlm.run", [this](ThreadCtx& tc) { body(tc); });
}

PlicTerms PlicTlm::compute() {
  std::array<Term, 9> prio;
  prio[0] = c32(0);
  for (unsigned id = 1; id <= 8; ++id)
    prio[id] = regs.peek_word(kPriority0 + 4 * (id - 1));
  return plic_compute(ops_, true, false, false, regs.peek_reg("PENDING"),
                      regs.peek_reg("ENABLE"), prio, regs.peek_reg("THRESHOLD"));
}

void PlicTlm::body(ThreadCtx& tc) {
  ExecutionContext& ctx = k_.ctx();
  SYMX_THREAD_BEGIN(tc);
  for (;;) {
    SYMX_WAIT_EVENT(tc, start);
    {
      Term ctrl = regs.peek_reg("CTRL");
      if (ctx.branch(ops_.op("cmd_line_eq", OpTag::Eq, ctrl, c32(1)))) {
        PlicTerms t = compute();
        regs.poke_reg("STATUS", t.line);
        regs.poke_reg("CTRL", c32(0));
      } else if (ctx.branch(ops_.op("cmd_claim_eq", OpTag::Eq, ctrl, c32(2)))) {
        PlicTerms t = compute();
        regs.poke_reg("CLAIM", t.claim_id);
        regs.poke_reg("PENDING", t.pending_after);
        regs.poke_reg("CTRL", c32(0));
      }
    }
  }
  SYMX_THREAD_END(tc);
}

TlmResponse PlicTlm::transport(TlmTransaction& t, TlmCheckMode mode) {
  ExecutionContext& ctx = k_.ctx();
  // Claim window first: read claims, write completes.
  if (t.length == 4 && ctx.branch(eq(t.addr, mk_const(8, kClaim)))) {
    if (t.cmd == TlmCmd::Read) {
      PlicTerms terms = compute();
      t.data.clear();
      for (unsigned i = 0; i < 4; ++i)
        t.data.push_back(extract(terms.claim_id, 8 * i + 7, 8 * i));
      regs.poke_reg("PENDING", terms.pending_after);
    }
    // Complete: gateway re-arm only, no register effect.
    t.response = TlmResponse::Ok;
    return t.response;
  }

  TlmFrontConfig cfg;
  cfg.prefix = "plic.tlm";
  if (!tlm_front_validate(ctx, regs, t, mode, cfg)) return t.response;
  if (t.cmd == TlmCmd::Write) {
    tlm_write_bytes(regs, t, "plic.tlm.bus_write");
    k_.notify(start, 1);
  } else {
    tlm_read_bytes(regs, t, "plic.tlm.bus_read");
  }
  t.response = TlmResponse::Ok;
  return t.response;
}

} // namespace symx::duv
