// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"
#include "symx/harness/campaign.hpp"
#include "symx/report.hpp"

namespace symx::harness {

using ordered_json = nlohmann::ordered_json;

ordered_json report_to_json(const Report& r);
ordered_json campaign_to_json(const CampaignResult& c);

/// Parse-back used by round-trip checks; witnesses come back as
/// symbol-name -> decimal maps.
Report report_from_json(const ordered_json& j);

/// Writes the document with stable key order. Throws on unwritable paths.
void emit_report(const ordered_json& j, const std::string& path);

} // namespace symx::harness
