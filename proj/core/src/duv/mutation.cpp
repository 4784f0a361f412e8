// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/mutation.hpp"

#include <algorithm>

namespace symx {

std::vector<OpTag> mutation_alternatives(OpTag original) {
  switch (op_class(original)) {
    case OpClass::Arithmetic: {
      std::vector<OpTag> all = {OpTag::Add, OpTag::Sub, OpTag::Mul, OpTag::Udiv,
                                OpTag::Urem};
      std::erase(all, original);
      return all;
    }
    case OpClass::Bitwise: {
      if (original == OpTag::Not) return {};
      std::vector<OpTag> all = {OpTag::And, OpTag::Or, OpTag::Xor};
      std::erase(all, original);
      return all;
    }
    case OpClass::Shift: {
      std::vector<OpTag> all = {OpTag::Shl, OpTag::Lshr, OpTag::Ashr};
      std::erase(all, original);
      return all;
    }
    case OpClass::Relational: {
      std::vector<OpTag> all = {OpTag::Eq,  OpTag::Ne,  OpTag::Ult,
                                OpTag::Ule, OpTag::Slt, OpTag::Sle};
      std::erase(all, original);
      return all;
    }
    case OpClass::Structural:
      return {};
  }
  return {};
}

void MutationTable::record_site(const std::string& site_id,
                                const std::string& peripheral,
                                const std::string& level, OpTag original) {
  for (const auto& s : catalog_)
    if (s.site_id == site_id) return;
  catalog_.push_back(MutationSite{site_id, peripheral, level, original});
}

const MutationSite* MutationTable::find(const std::string& site_id) const {
  for (const auto& s : catalog_)
    if (s.site_id == site_id) return &s;
  return nullptr;
}

void MutationTable::set_mutation(const std::string& site_id, OpTag replacement) {
  const MutationSite* site = find(site_id);
  if (!site) throw ContextError("set_mutation: unknown site '" + site_id + "'");
  auto alts = mutation_alternatives(site->original);
  if (std::find(alts.begin(), alts.end(), replacement) == alts.end())
    throw ContextError("set_mutation: '" + std::string(op_name(replacement)) +
                       "' is not a same-class replacement at " + site_id);
  active_site_ = site_id;
  replacement_ = replacement;
}

void MutationTable::clear_mutation() { active_site_.clear(); }

Term OpBuilder::op(const std::string& site, OpTag tag, const Term& a,
                   const Term& b) {
  std::string id = full_site(site);
  OpTag effective = tag;
  if (table_) {
    table_->record_site(id, peripheral_, level_, tag);
    effective = table_->effective(id, tag);
  }
  switch (effective) {
    case OpTag::Udiv: return ctx_.checked_div(a, b, id);
    case OpTag::Urem: return ctx_.checked_rem(a, b, id);
    case OpTag::Shl:
    case OpTag::Lshr:
    case OpTag::Ashr: return ctx_.checked_shift(effective, a, b, id);
    default: return apply(effective, {a, b});
  }
}

Term OpBuilder::op1(const std::string& site, OpTag tag, const Term& a) {
  std::string id = full_site(site);
  if (table_) table_->record_site(id, peripheral_, level_, tag);
  // Unary sites have no same-arity alternatives; recorded for completeness.
  return apply(tag, {a});
}

} // namespace symx
