// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "symx/context.hpp"
#include "symx/term.hpp"

namespace symx {

struct MutationSite {
  std::string site_id; // "<peripheral>.<level>.<site>"
  std::string peripheral;
  std::string level;
  OpTag original;
};

/// Same-class, same-arity replacement candidates for a site's original
/// operator. Unary and structural operators have none.
std::vector<OpTag> mutation_alternatives(OpTag original);

/// Site catalog plus the single active replacement of a campaign run. The
/// catalog fills up as DUV code constructs operators; mutants are single-site.
class MutationTable {
public:
  void record_site(const std::string& site_id, const std::string& peripheral,
                   const std::string& level, OpTag original);

  const std::vector<MutationSite>& catalog() const { return catalog_; }
  const MutationSite* find(const std::string& site_id) const;

  /// Activates a single-site mutant. Cross-class or arity-breaking
  /// replacements are rejected.
  void set_mutation(const std::string& site_id, OpTag replacement);
  void clear_mutation();
  bool has_mutation() const { return !active_site_.empty(); }

  OpTag effective(const std::string& site_id, OpTag original) const {
    return site_id == active_site_ ? replacement_ : original;
  }

private:
  std::vector<MutationSite> catalog_;
  std::string active_site_;
  OpTag replacement_ = OpTag::Add;
};

/// All DUV operator construction funnels through here: site bookkeeping,
/// active-mutant replacement, and automatic guarding of divisions and
/// shifts. Reference computations in testbenches use plain apply() instead,
/// so a mutant never rewrites its own oracle.
class OpBuilder {
public:
  OpBuilder(ExecutionContext& ctx, MutationTable* table, std::string peripheral,
            std::string level)
      : ctx_(ctx), table_(table), peripheral_(std::move(peripheral)),
        level_(std::move(level)) {}

  Term op(const std::string& site, OpTag tag, const Term& a, const Term& b);
  Term op1(const std::string& site, OpTag tag, const Term& a);

  ExecutionContext& ctx() { return ctx_; }
  const std::string& level() const { return level_; }
  std::string full_site(const std::string& site) const {
    return peripheral_ + "." + level_ + "." + site;
  }

private:
  ExecutionContext& ctx_;
  MutationTable* table_;
  std::string peripheral_;
  std::string level_;
};

} // namespace symx
