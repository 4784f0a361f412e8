// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symx/duv/bus.hpp"
#include "symx/duv/mutation.hpp"
#include "symx/duv/regfile.hpp"
#include "symx/kernel.hpp"

namespace symx::duv {

// Subtraction-based gcd over a 4-bit datapath held in 32-bit registers.
// Start by writing 1 to CTRL; STATUS goes 1 when RESULT is valid.
// Bug variants:
//   gcd-signed-cmp  (TLM) the magnitude comparison uses a signed view
//   gcd-inf         (testbench level) zero inputs reach the loop
class GcdRtl {
public:
  static constexpr unsigned kDataWidth = 4;
  static std::vector<RegSpec> reg_layout();

  GcdRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs, const RtlBus& bus);

  RegisterFile regs;

  Term result() const { return regs.peek_reg("RESULT"); }
  Term status() const { return regs.peek_reg("STATUS"); }

private:
  void on_clock();
  void bus_cycle();

  SimKernel& k_;
  OpBuilder ops_;
  RtlBus bus_;
  PortId addr_in_, wdata_in_, we_in_, re_in_;
  Term a_, b_;
  bool busy_ = false;
};

class GcdTlm {
public:
  static constexpr unsigned kDataWidth = 4;
  static std::vector<RegSpec> reg_layout();

  GcdTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs);

  RegisterFile regs;
  EventId start;

  Term result() const { return regs.peek_reg("RESULT"); }
  Term status() const { return regs.peek_reg("STATUS"); }

  TlmResponse transport(TlmTransaction& t, TlmCheckMode mode);

private:
  void body(ThreadCtx& tc);

  SimKernel& k_;
  OpBuilder ops_;
  bool bug_signed_;
  Term a_, b_;
};

} // namespace symx::duv
