// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "symx/solver.hpp"

namespace symx {

/// Evaluates the SMT-LIB2 subset serialize_query() emits (QF_ABV scripts:
/// declarations, define-funs, assertions, check-sat, get-value) against the
/// built-in enumerative backend and returns the textual answer. Used by the
/// `symx smt` subcommand, which makes the process a drop-in stand-in for an
/// external solver when checking the wire format end to end.
std::string run_smt_script(const std::string& script, unsigned max_bits = 24);

} // namespace symx
