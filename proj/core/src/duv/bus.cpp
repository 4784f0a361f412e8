// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/bus.hpp"

namespace symx {

const std::vector<std::string>& BugSet::known() {
  static const std::vector<std::string> names = {
      "plic-threshold-inversion",   // E1 analog: eligibility uses <= threshold
      "plic-prio-clamp-divergence", // E2 analog: RTL clamps priorities at use
      "gcd-signed-cmp",             // E3 analog: signed magnitude comparison
      "map-oob-write",              // E2 analog: unchecked write past the file
      "gcd-inf",                    // INF analog: zero inputs reach the loop
  };
  return names;
}

} // namespace symx
