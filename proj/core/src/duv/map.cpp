// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/map.hpp"

#include "symx/duv/busfront.hpp"

namespace symx::duv {

namespace {

std::vector<RegSpec> map_layout() {
  return {
      {"IN0", 0x00, 4, Access::RW},  {"IN1", 0x04, 4, Access::RW},
      {"M", 0x08, 4, Access::RW},    {"CTRL", 0x0C, 4, Access::RW},
      {"STATUS", 0x10, 4, Access::RO}, {"OUT0", 0x14, 4, Access::RO},
      {"OUT1", 0x18, 4, Access::RO},
  };
}

constexpr size_t kMapRegSize = 64;

Term c8(uint64_t v) { return mk_const(8, v); }

// Shared per-byte mapping, TLM/reference association.
Term map_byte(OpBuilder& ops, const Term& in, const Term& m) {
  Term rot = ops.op("rot_or", OpTag::Or, ops.op("rot_shl", OpTag::Shl, m, c8(1)),
                    ops.op("rot_lshr", OpTag::Lshr, m, c8(7)));
  return ops.op("map_xor", OpTag::Xor, ops.op("map_add", OpTag::Add, in, m), rot);
}

} // namespace

Term map_reference_byte(const Term& in8, const Term& m8) {
  Term rot = or_(shl(m8, c8(1)), lshr(m8, c8(7)));
  return xor_(add(in8, m8), rot);
}

std::vector<RegSpec> MapRtl::reg_layout() { return map_layout(); }
std::vector<RegSpec> MapTlm::reg_layout() { return map_layout(); }

MapRtl::MapRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs,
               const RtlBus& bus)
    : regs(k.ctx(), "map.rtl", 8, kMapRegSize, map_layout()), k_(k),
      ops_(k.ctx(), mut, "map", "rtl"), bus_(bus), m_(c8(0)) {
  (void)bugs;
  addr_in_ = k.add_port("map.rtl.addr");
  k.bind(addr_in_, bus.addr);
  wdata_in_ = k.add_port("map.rtl.wdata");
  k.bind(wdata_in_, bus.wdata);
  we_in_ = k.add_port("map.rtl.we");
  k.bind(we_in_, bus.we);
  re_in_ = k.add_port("map.rtl.re");
  k.bind(re_in_, bus.re);

  ProcessId p = k.add_method("map.rtl.clk", [this] { on_clock(); }, false);
  k.sensitive(p, bus.clk, Edge::Pos);
}

void MapRtl::bus_cycle() {
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
    if (ctx.branch(ult(base, mk_const(8, 0x1C))))
      rdata = regs.read_word(base, "map.rtl.bus_read");
    k_.signal_write(bus_.rdata, rdata);
    k_.signal_write(bus_.ready, mk_const(1, 1));
  } else {
    k_.signal_write(bus_.ready, mk_const(1, 0));
  }
}

void MapRtl::on_clock() {
  ExecutionContext& ctx = k_.ctx();
  if (!busy_) {
    Term ctrl = regs.peek_reg("CTRL");
    if (ctx.branch(ops_.op("start_eq", OpTag::Eq, ctrl, mk_const(32, 1)))) {
      m_ = regs.peek_byte(kM);
      round_ = 0;
      busy_ = true;
      regs.poke_reg("CTRL", mk_const(32, 0));
      regs.poke_reg("STATUS", mk_const(32, 0));
    }
  } else if (round_ < 8) {
    // One output byte per edge; addresses come out of the index datapath.
    Term i_t = c8(round_);
    Term in_idx = ops_.op("in_addr", OpTag::Add, c8(kIn0), i_t);
    Term in = regs.read_byte(in_idx, "map.rtl.in_read");
    Term rot = ops_.op("rot_or", OpTag::Or,
                       ops_.op("rot_lshr", OpTag::Lshr, m_, c8(7)),
                       ops_.op("rot_shl", OpTag::Shl, m_, c8(1)));
    Term out =
        ops_.op("map_xor", OpTag::Xor, ops_.op("map_add", OpTag::Add, in, m_), rot);
    Term out_idx = ops_.op("out_addr", OpTag::Add, c8(kOut0), i_t);
    regs.write_byte(out_idx, out, "map.rtl.out_write");
    ++round_;
  } else {
    regs.poke_reg("STATUS", mk_const(32, 1));
    busy_ = false;
  }
  bus_cycle();
}

MapTlm::MapTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs)
    : regs(k.ctx(), "map.tlm", 8, kMapRegSize, map_layout()), k_(k),
      ops_(k.ctx(), mut, "map", "tlm"), bug_oob_(bugs.has("map-oob-write")) {
  start = k.add_event("map.tlm.start");
  k.add_thread("map.tlm.run", [this](ThreadCtx& tc) { body(tc); });
}

void MapTlm::body(ThreadCtx& tc) {
  ExecutionContext& ctx = k_.ctx();
  SYMX_THREAD_BEGIN(tc);
  for (;;) {
    SYMX_WAIT_EVENT(tc, start);
    if (!ctx.branch(ops_.op("start_eq", OpTag::Eq, regs.peek_reg("CTRL"),
                            mk_const(32, 1))))
      continue;
    regs.poke_reg("CTRL", mk_const(32, 0));
    {
      Term m = regs.peek_byte(kM);
      Term i_t = c8(0);
      // Eight registers, fixed count; the byte index is datapath state.
      for (unsigned i = 0; i < 8; ++i) {
        Term in = regs.read_byte(add(c8(kIn0), i_t), "map.tlm.in_read");
        Term out = map_byte(ops_, in, m);
        regs.write_byte(add(c8(kOut0), i_t), out, "map.tlm.out_write");
        i_t = ops_.op("idx_inc", OpTag::Add, i_t, c8(1));
      }
    }
    regs.poke_reg("STATUS", mk_const(32, 1));
  }
  SYMX_THREAD_END(tc);
}

TlmResponse MapTlm::transport(TlmTransaction& t, TlmCheckMode mode) {
  TlmFrontConfig cfg;
  cfg.prefix = "map.tlm";
  cfg.sloppy_bounds = bug_oob_ && t.cmd == TlmCmd::Write;
  if (!tlm_front_validate(k_.ctx(), regs, t, mode, cfg)) return t.response;
  if (t.cmd == TlmCmd::Write) {
    tlm_write_bytes(regs, t, "map.tlm.bus_write");
    k_.notify(start, 1);
  } else {
    tlm_read_bytes(regs, t, "map.tlm.bus_read");
  }
  t.response = TlmResponse::Ok;
  return t.response;
}

} // namespace symx::duv
