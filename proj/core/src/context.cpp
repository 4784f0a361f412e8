// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/context.hpp"

namespace symx {

std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::AssertionFailure: return "AssertionFailure";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::Overshift: return "Overshift";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::Unreachable: return "Unreachable";
  }
  return "?";
}

std::string_view partial_reason_name(PartialReason r) {
  switch (r) {
    case PartialReason::OverallTimeout: return "OverallTimeout";
    case PartialReason::SolverTimeout: return "SolverTimeout";
    case PartialReason::StepBudget: return "StepBudget";
    case PartialReason::MemoryBudget: return "MemoryBudget";
    case PartialReason::QueueBudget: return "QueueBudget";
  }
  return "?";
}

uint64_t ConcreteContext::concrete(const Term& t, const char* what) const {
  if (!t.valid()) throw ContextError(std::string(what) + ": null term");
  if (!t.is_const())
    throw ContextError(std::string(what) +
                       ": symbolic value reached a concrete replay");
  return t.const_value();
}

void ConcreteContext::fail(ErrorKind kind, const std::string& site) {
  ErrorRecord rec;
  rec.kind = kind;
  rec.site = site;
  rec.witness = inputs_;
  outcome_.errors.push_back(std::move(rec));
  throw PathStop{PathStatus::Errored};
}

Term ConcreteContext::make_symbol(const std::string& name, unsigned width) {
  auto it = inputs_.find(name);
  if (it == inputs_.end())
    throw ContextError("concrete replay has no value for symbol '" + name + "'");
  uint64_t mask = width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  return mk_const(width, it->second & mask);
}

// Bounds replay of runaway mutants whose loops never touch the scheduler.
void ConcreteContext::charge_op() {
  if (++ops_ > op_budget_)
    throw PathStop{PathStatus::Partial, PartialReason::StepBudget};
}

bool ConcreteContext::branch(const Term& cond) {
  charge_op();
  return concrete(cond, "branch") != 0;
}

void ConcreteContext::assume(const Term& cond) {
  if (concrete(cond, "assume") == 0) {
    outcome_.pruned = true;
    throw PathStop{PathStatus::Pruned};
  }
}

void ConcreteContext::check_assert(const Term& cond, const std::string& site) {
  if (concrete(cond, "assert") == 0) fail(ErrorKind::AssertionFailure, site);
}

Term ConcreteContext::checked_div(const Term& a, const Term& b,
                                  const std::string& site) {
  if (concrete(b, "checked_div") == 0) fail(ErrorKind::DivideByZero, site);
  return udiv(a, b);
}

Term ConcreteContext::checked_rem(const Term& a, const Term& b,
                                  const std::string& site) {
  if (concrete(b, "checked_rem") == 0) fail(ErrorKind::DivideByZero, site);
  return urem(a, b);
}

Term ConcreteContext::checked_shift(OpTag tag, const Term& a, const Term& amount,
                                    const std::string& site) {
  if (concrete(amount, "checked_shift") >= a.width())
    fail(ErrorKind::Overshift, site);
  return apply(tag, {a, amount});
}

void ConcreteContext::checked_bound(const Term& index, uint64_t size,
                                    const std::string& site) {
  if (concrete(index, "checked_bound") >= size) fail(ErrorKind::OutOfBounds, site);
}

Term ConcreteContext::array_read(const SymArray& arr, const Term& index) {
  return read_raw(arr, index);
}

void ConcreteContext::observe(const std::string& name, const Term& value) {
  outcome_.observables[name] = concrete(value, "observe");
}

void ConcreteContext::unreachable(const std::string& site) {
  fail(ErrorKind::Unreachable, site);
}

} // namespace symx
