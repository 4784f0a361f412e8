// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symx/duv/bus.hpp"
#include "symx/duv/mutation.hpp"
#include "symx/duv/regfile.hpp"
#include "symx/kernel.hpp"

namespace symx::duv {

/// Eight fixed rounds of h = rotl32(h ^ a, 5) + (b + r), seeded with
/// 0x12345678. The RTL datapath computes one round per clock edge and
/// associates the additions differently from the TLM/reference form, so the
/// two levels build structurally distinct but equal terms.
Term hash_reference_term(const Term& a32, const Term& b32);

class HashRtl {
public:
  static std::vector<RegSpec> reg_layout();

  HashRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs, const RtlBus& bus);

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
  Term h_, a_, b_;
  unsigned round_ = 0;
  bool busy_ = false;
};

class HashTlm {
public:
  static std::vector<RegSpec> reg_layout();

  HashTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs);

  RegisterFile regs;
  EventId start;

  Term result() const { return regs.peek_reg("RESULT"); }
  Term status() const { return regs.peek_reg("STATUS"); }

  TlmResponse transport(TlmTransaction& t, TlmCheckMode mode);

private:
  void body(ThreadCtx& tc);

  SimKernel& k_;
  OpBuilder ops_;
  Term h_, a_, b_, r_;
};

} // namespace symx::duv
