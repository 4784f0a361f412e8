// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/harness/regmaps.hpp"

#include "symx/duv/gcd.hpp"
#include "symx/duv/hash.hpp"
#include "symx/duv/map.hpp"
#include "symx/duv/plic.hpp"

namespace symx::harness {

namespace {

nlohmann::ordered_json layout_json(const std::vector<RegSpec>& layout,
                                   size_t size_bytes) {
  nlohmann::ordered_json j;
  j["size_bytes"] = size_bytes;
  nlohmann::ordered_json regs = nlohmann::ordered_json::array();
  for (const auto& r : layout) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["offset"] = r.offset;
    e["bytes"] = r.bytes;
    e["access"] = r.access == Access::RW ? "RW" : "RO";
    regs.push_back(std::move(e));
  }
  j["registers"] = std::move(regs);
  return j;
}

} // namespace

nlohmann::ordered_json register_maps() {
  nlohmann::ordered_json j;
  j["gcd"] = layout_json(duv::GcdRtl::reg_layout(), 32);
  j["hash"] = layout_json(duv::HashRtl::reg_layout(), 32);
  j["map"] = layout_json(duv::MapRtl::reg_layout(), 64);
  j["plic"] = layout_json(duv::PlicRtl::reg_layout(), 64);
  return j;
}

std::string register_maps_text() { return register_maps().dump(2) + "\n"; }

} // namespace symx::harness
