// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symx/duv/bus.hpp"
#include "symx/duv/regfile.hpp"

namespace symx::duv {

struct TlmFrontConfig {
  std::string prefix; // "<peripheral>.tlm"
  // Bug hook: replace window/alignment validation by a bare start-of-range
  // check, letting transfers run past their register window.
  bool sloppy_bounds = false;
};

/// Window containment for [addr, addr+length) computed at 16 bits so the
/// 8-bit address cannot wrap through the comparison.
Term window_contains(const RegSpec& reg, const Term& addr8, unsigned length);

/// Validates length, alignment and window membership of a transaction.
/// Returns false when the transaction must stop (response carries the
/// reason); in assert mode infeasible-free violations become engine
/// assertion records instead.
bool tlm_front_validate(ExecutionContext& ctx, RegisterFile& regs,
                        TlmTransaction& t, TlmCheckMode mode,
                        const TlmFrontConfig& cfg);

void tlm_write_bytes(RegisterFile& regs, TlmTransaction& t, const std::string& site);
void tlm_read_bytes(RegisterFile& regs, TlmTransaction& t, const std::string& site);

/// Word-granular RTL write: every RW register merges the write data under
/// an address-hit predicate, so unmapped or read-only targets change
/// nothing and no fork is needed for the dispatch.
void rtl_write_all_rw(RegisterFile& regs, const Term& base8, const Term& wdata32);

} // namespace symx::duv
