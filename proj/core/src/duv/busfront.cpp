// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/busfront.hpp"

namespace symx::duv {

Term window_contains(const RegSpec& reg, const Term& addr8, unsigned length) {
  Term a16 = zext(addr8, 16);
  Term end16 = add(a16, mk_const(16, length - 1));
  return and_(ule(mk_const(16, reg.offset), a16),
              ule(end16, mk_const(16, reg.offset + reg.bytes - 1)));
}

bool tlm_front_validate(ExecutionContext& ctx, RegisterFile& regs,
                        TlmTransaction& t, TlmCheckMode mode,
                        const TlmFrontConfig& cfg) {
  ExecutionContext& c = ctx;

  bool len_ok = t.length == 1 || t.length == 2 || t.length == 4;
  if (mode == TlmCheckMode::AssertStyle) {
    c.check_assert(mk_const(1, len_ok ? 1 : 0), cfg.prefix + ".len_valid");
  } else if (!len_ok) {
    t.response = TlmResponse::LengthError;
    return false;
  }

  Term valid;
  if (cfg.sloppy_bounds) {
    valid = ult(zext(t.addr, 16), mk_const(16, regs.size()));
  } else {
    Term aligned = eq(and_(t.addr, mk_const(8, t.length - 1)), mk_const(8, 0));
    Term in_window = mk_const(1, 0);
    for (const auto& reg : regs.layout()) {
      if (t.cmd == TlmCmd::Write && reg.access != Access::RW) continue;
      in_window = or_(in_window, window_contains(reg, t.addr, t.length));
    }
    valid = and_(aligned, in_window);
  }

  if (mode == TlmCheckMode::AssertStyle) {
    c.check_assert(valid, cfg.prefix + ".addr_valid");
    return true;
  }
  if (!c.branch(valid)) {
    t.response = TlmResponse::AddressError;
    return false;
  }
  return true;
}

void tlm_write_bytes(RegisterFile& regs, TlmTransaction& t,
                     const std::string& site) {
  for (unsigned i = 0; i < t.length; ++i) {
    Term idx = i ? add(t.addr, mk_const(8, i)) : t.addr;
    regs.write_byte(idx, t.data.at(i), site);
  }
}

void tlm_read_bytes(RegisterFile& regs, TlmTransaction& t,
                    const std::string& site) {
  t.data.clear();
  for (unsigned i = 0; i < t.length; ++i) {
    Term idx = i ? add(t.addr, mk_const(8, i)) : t.addr;
    t.data.push_back(regs.read_byte(idx, site));
  }
}

void rtl_write_all_rw(RegisterFile& regs, const Term& base8, const Term& wdata32) {
  for (const auto& reg : regs.layout()) {
    if (reg.access != Access::RW) continue;
    for (uint32_t w = 0; w < reg.bytes; w += 4) {
      Term hit = eq(base8, mk_const(8, reg.offset + w));
      Term merged = ite(hit, wdata32, regs.peek_word(reg.offset + w));
      regs.poke_word(reg.offset + w, merged);
    }
  }
}

} // namespace symx::duv
