// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <vector>

#include "symx/kernel.hpp"
#include "symx/term.hpp"

namespace symx {

/// Word bus at the register-transfer level: drive addr/wdata and strobe
/// we or re across one clock edge; ready pulses when the DUV acted.
struct RtlBus {
  SignalId addr;  // width 8
  SignalId wdata; // width 32
  SignalId rdata; // width 32
  SignalId we;    // width 1
  SignalId re;    // width 1
  SignalId ready; // width 1
  SignalId clk;

  static RtlBus create(SimKernel& k, const std::string& prefix, SignalId clk) {
    RtlBus b;
    b.addr = k.add_signal(prefix + ".addr", mk_const(8, 0));
    b.wdata = k.add_signal(prefix + ".wdata", mk_const(32, 0));
    b.rdata = k.add_signal(prefix + ".rdata", mk_const(32, 0));
    b.we = k.add_signal(prefix + ".we", mk_const(1, 0));
    b.re = k.add_signal(prefix + ".re", mk_const(1, 0));
    b.ready = k.add_signal(prefix + ".ready", mk_const(1, 0));
    b.clk = clk;
    return b;
  }
};

enum class TlmCmd : uint8_t { Read, Write };
enum class TlmResponse : uint8_t { Ok, AddressError, LengthError };

/// Interface validation style: assert mode raises engine assertions for
/// invalid addresses/lengths so exploration reports them as findings; the
/// production variant answers with response codes.
enum class TlmCheckMode : uint8_t { AssertStyle, ResponseCode };

struct TlmTransaction {
  TlmCmd cmd = TlmCmd::Read;
  Term addr;               // width 8
  std::vector<Term> data;  // `length` bytes, little-endian
  unsigned length = 4;     // valid lengths: 1, 2, 4
  TlmResponse response = TlmResponse::Ok;
};

/// Named bug-variant switches. Every variant is off by default; scenarios
/// activate them via --bug.
class BugSet {
public:
  BugSet() = default;
  explicit BugSet(std::set<std::string> names) : names_(std::move(names)) {}
  bool has(const std::string& name) const { return names_.count(name) != 0; }
  const std::set<std::string>& names() const { return names_; }

  static const std::vector<std::string>& known();

private:
  std::set<std::string> names_;
};

} // namespace symx
