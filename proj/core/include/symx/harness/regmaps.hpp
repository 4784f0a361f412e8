// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"

namespace symx::harness {

/// Machine-readable register layout table for every peripheral at both
/// levels: name, byte offset, byte width, and access mode per register.
/// data/register_maps.json in the repository mirrors this document; a test
/// keeps the two in sync.
nlohmann::ordered_json register_maps();

std::string register_maps_text();

} // namespace symx::harness
