// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symx/duv/bus.hpp"
#include "symx/duv/mutation.hpp"
#include "symx/duv/regfile.hpp"
#include "symx/kernel.hpp"

namespace symx::duv {

/// Memory-mapped byte mapper: out[i] = (in[i] + m) ^ rotl8(m, 1) over eight
/// input bytes that live directly in the register file (the bus and the
/// peripheral share the same backing array). RTL computes one byte per
/// clock edge; TLM computes all eight in a single call.
/// Bug variant map-oob-write: the TLM bus front end only checks the start
/// address, so a long write can run past the register file.
Term map_reference_byte(const Term& in8, const Term& m8);

class MapRtl {
public:
  static std::vector<RegSpec> reg_layout();
  static constexpr uint32_t kIn0 = 0x00, kM = 0x08, kOut0 = 0x14;

  MapRtl(SimKernel& k, MutationTable* mut, const BugSet& bugs, const RtlBus& bus);

  RegisterFile regs;

  Term out_byte(unsigned i) const { return regs.peek_byte(kOut0 + i); }
  Term status() const { return regs.peek_reg("STATUS"); }

private:
  void on_clock();
  void bus_cycle();

  SimKernel& k_;
  OpBuilder ops_;
  RtlBus bus_;
  PortId addr_in_, wdata_in_, we_in_, re_in_;
  Term m_;
  unsigned round_ = 0;
  bool busy_ = false;
};

class MapTlm {
public:
  static std::vector<RegSpec> reg_layout();
  static constexpr uint32_t kIn0 = 0x00, kM = 0x08, kOut0 = 0x14;

  MapTlm(SimKernel& k, MutationTable* mut, const BugSet& bugs);

  RegisterFile regs;
  EventId start;

  Term out_byte(unsigned i) const { return regs.peek_byte(kOut0 + i); }
  Term status() const { return regs.peek_reg("STATUS"); }

  TlmResponse transport(TlmTransaction& t, TlmCheckMode mode);

private:
  void body(ThreadCtx& tc);

  SimKernel& k_;
  OpBuilder ops_;
  bool bug_oob_;
};

} // namespace symx::duv
