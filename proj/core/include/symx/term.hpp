// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symx {

/// Maximum bitvector width supported by the expression layer.
inline constexpr unsigned kMaxWidth = 64;

/// Thrown on malformed term construction (width/arity/value violations).
class TermError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Kind : uint8_t {
  Constant,
  Symbol,
  Op,
  // Array-typed nodes. They never appear as scalar operands; a Select
  // produces a width-8 scalar, Store/ArrayLit only occur below a Select.
  ArrayLit,
  Store,
  Select,
};

enum class OpTag : uint8_t {
  // Arithmetic
  Add, Sub, Mul, Udiv, Urem,
  // Bitwise
  And, Or, Xor, Not,
  // Shift
  Shl, Lshr, Ashr,
  // Relational (result width 1)
  Eq, Ne, Ult, Ule, Slt, Sle,
  // Structural
  Ite, Zext, Sext, Extract, Concat,
};

/// Operator classes. Mutation-site replacement only swaps tags within one
/// class (and only where arity and width contracts still hold).
enum class OpClass : uint8_t { Arithmetic, Bitwise, Shift, Relational, Structural };

OpClass op_class(OpTag tag);
std::string_view op_name(OpTag tag);

using SymbolId = uint32_t;

/// Concrete valuation of symbols, keyed by symbol id.
using Assignment = std::map<SymbolId, uint64_t>;

struct TermNode;

/// Immutable bitvector expression. Copies share structure; a Term is never
/// modified after construction. Default-constructed Terms are null and only
/// valid as placeholders.
class Term {
public:
  Term() = default;

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  unsigned width() const;

  bool is_const() const { return valid() && kind() == Kind::Constant; }
  uint64_t const_value() const;

  bool is_symbol() const { return valid() && kind() == Kind::Symbol; }
  SymbolId symbol_id() const;
  const std::string& symbol_name() const;

  bool is_op() const { return valid() && kind() == Kind::Op; }
  OpTag tag() const;
  size_t num_operands() const;
  const Term& operand(size_t i) const;

  // Extract bounds / extension target width.
  unsigned hi() const;
  unsigned lo() const;
  unsigned ext_width() const;

  // Array accessors.
  unsigned index_width() const;
  const std::vector<Term>& cells() const;

  const TermNode* node() const { return node_.get(); }

  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Kind kind;
  OpTag tag = OpTag::Add;
  unsigned width = 0;       // scalar result width; 8 for Select/array elements
  uint64_t value = 0;       // Constant payload
  unsigned aux0 = 0;        // Extract hi / Zext/Sext target width
  unsigned aux1 = 0;        // Extract lo
  unsigned index_width = 0; // ArrayLit/Store/Select address width
  SymbolId sym_id = 0;
  std::string sym_name;
  std::vector<Term> ops;

  // Evaluation memo, see eval(). Single-threaded by contract.
  mutable uint64_t eval_epoch = 0;
  mutable uint64_t eval_value = 0;

  TermNode();
  ~TermNode();
  TermNode(const TermNode&) = delete;
  TermNode& operator=(const TermNode&) = delete;
};

/// Number of TermNodes currently alive. Used as the engine's approximate
/// memory budget.
int64_t live_term_nodes();

Term mk_const(unsigned width, uint64_t value);

/// Raw symbol constructor; name uniqueness is the SymbolTable's job.
Term mk_symbol(std::string name, unsigned width, SymbolId id);

/// Generic operator application with constant folding. Folding rules:
///  - all-constant operands fold to a single constant under two's-complement
///    modulo-2^width semantics (udiv by 0 -> all-ones, urem by 0 -> dividend,
///    shifts by >= width -> 0 resp. sign fill);
///  - syntactic-identity folds, exactly: eq(x,x)->1, xor(x,x)->0,
///    and(x,x)->x, or(x,x)->x, sub(x,x)->0;
///  - select with a concrete index resolves through concrete-index stores.
/// No other rewriting happens here.
Term apply(OpTag tag, std::vector<Term> operands);

Term apply_extract(const Term& t, unsigned hi, unsigned lo);
Term apply_ext(OpTag tag, const Term& t, unsigned new_width);

// Convenience builders.
Term add(const Term& a, const Term& b);
Term sub(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term udiv(const Term& a, const Term& b);
Term urem(const Term& a, const Term& b);
Term and_(const Term& a, const Term& b);
Term or_(const Term& a, const Term& b);
Term xor_(const Term& a, const Term& b);
Term not_(const Term& a);
Term shl(const Term& a, const Term& amount);
Term lshr(const Term& a, const Term& amount);
Term ashr(const Term& a, const Term& amount);
Term eq(const Term& a, const Term& b);
Term ne(const Term& a, const Term& b);
Term ult(const Term& a, const Term& b);
Term ule(const Term& a, const Term& b);
Term slt(const Term& a, const Term& b);
Term sle(const Term& a, const Term& b);
Term ite(const Term& c, const Term& t, const Term& e);
Term zext(const Term& t, unsigned new_width);
Term sext(const Term& t, unsigned new_width);
Term extract(const Term& t, unsigned hi, unsigned lo);
Term concat(const Term& hi, const Term& lo);

/// Array literal over the given cells (each width 8, concretely indexed
/// 0..cells.size()-1). Cells outside the literal read as zero in the
/// built-in evaluator; the engine keeps indices in bounds via forking.
Term mk_array(unsigned index_width, std::vector<Term> cells);
Term mk_store(const Term& array, const Term& index, const Term& value);
Term mk_select(const Term& array, const Term& index);

/// Structural equality (same shape, tags, widths, payloads).
bool struct_eq(const Term& a, const Term& b);

/// Direct evaluation under a full assignment, memoized per call over the
/// term DAG. Throws TermError on unbound symbols.
uint64_t eval(const Term& t, const Assignment& env);

/// Evaluates any number of terms under one assignment sharing one memo
/// epoch, so DAGs common to several terms are walked once.
class EvalSession {
public:
  explicit EvalSession(const Assignment& env);
  uint64_t value(const Term& t);

private:
  const Assignment& env_;
};

/// Substitute assigned symbols by constants and re-fold. Symbols missing
/// from the assignment are kept.
Term substitute(const Term& t, const Assignment& env);

struct SymbolInfo {
  SymbolId id;
  std::string name;
  unsigned width;
};

/// Collect every distinct symbol under t into out (id-keyed, stable).
void collect_symbols(const Term& t, std::map<SymbolId, SymbolInfo>& out);

std::string to_string(const Term& t);

/// Per-test symbol registry: fresh ids, duplicate-name rejection, and the
/// id->name mapping used for witness reporting.
class SymbolTable {
public:
  Term fresh(const std::string& name, unsigned width);
  const std::vector<SymbolInfo>& symbols() const { return symbols_; }
  const SymbolInfo* find(SymbolId id) const;

private:
  std::vector<SymbolInfo> symbols_;
  SymbolId next_id_ = 0;
};

} // namespace symx
