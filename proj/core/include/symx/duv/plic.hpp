// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "symx/duv/bus.hpp"
#include "symx/duv/mutation.hpp"
#include "symx/duv/regfile.hpp"
#include "symx/kernel.hpp"

namespace symx::duv {

// Interrupt controller with 8 sources (ids 1..8), priorities 0..7, one
// target. A source is eligible when pending, enabled, and its priority is
// strictly above THRESHOLD. Claim returns the highest-priority eligible id
// (lowest id on ties) and clears its pending bit; claim-write (complete) has
// no register effect. CTRL=1 strobes a line evaluation into STATUS, CTRL=2
// strobes a claim into CLAIM.
//
// Bug variants:
//   plic-threshold-inversion  (RTL) eligibility uses priority <= threshold
//   plic-prio-clamp-divergence (RTL) priorities clamp to 7 at use
struct PlicTerms {
  Term claim_id;      // width 32
  Term line;          // width 32, 0 or 1
  Term pending_after; // width 32
};

/// The comparator over register-state terms. RTL scans ids ascending with a
/// strict best-compare; TLM scans descending with >=. Both implement the
/// same tie-break (lowest id among the highest priority).
PlicTerms plic_compute(OpBuilder& ops, bool descending, bool bug_inverted_threshold,
                       bool bug_clamp, const Term& pending32, const Term& enable32,
                       const std::array<Term, 9>& prio32, const Term& threshold32);

class PlicRtl {
public:
  static constexpr unsigned kSources = 8;
  static constexpr uint32_t kPriority0 = 0x00, kPending = 0x20, kEnable = 0x24,
                            kThreshold = 0x28, kClaim = 0x2C;
  static std::vector<RegSpec> reg_layout();

  PlicRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs, const RtlBus& bus);

  RegisterFile regs;

  Term claim_reg() const { return regs.peek_reg("CLAIM"); }
  Term status() const { return regs.peek_reg("STATUS"); }
  Term pending_reg() const { return regs.peek_reg("PENDING"); }

private:
  void on_clock();
  void bus_cycle();
  PlicTerms compute();

  SimKernel& k_;
  OpBuilder ops_;
  RtlBus bus_;
  PortId addr_in_, wdata_in_, we_in_, re_in_;
  bool bug_inv_, bug_clamp_;
};

class PlicTlm {
public:
  static constexpr unsigned kSources = 8;
  static constexpr uint32_t kPriority0 = 0x00, kPending = 0x20, kEnable = 0x24,
                            kThreshold = 0x28, kClaim = 0x2C;
  static std::vector<RegSpec> reg_layout();

  PlicTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs);

  RegisterFile regs;
  EventId start;

  Term claim_reg() const { return regs.peek_reg("CLAIM"); }
  Term status() const { return regs.peek_reg("STATUS"); }
  Term pending_reg() const { return regs.peek_reg("PENDING"); }

  TlmResponse transport(TlmTransaction& t, TlmCheckMode mode);

private:
  void body(ThreadCtx& tc);
  PlicTerms compute();

  SimKernel& k_;
  OpBuilder ops_;
};

} // namespace symx::duv
