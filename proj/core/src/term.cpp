// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/term.hpp"

#include <cassert>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace symx {

namespace {

int64_t g_live_nodes = 0;

uint64_t mask_for(unsigned width) {
  return width >= 64 ? ~uint64_t{0} : ((uint64_t{1} << width) - 1);
}

int64_t to_signed(uint64_t v, unsigned width) {
  if (width == 64) return static_cast<int64_t>(v);
  uint64_t sign = uint64_t{1} << (width - 1);
  return (v & sign) ? static_cast<int64_t>(v | ~mask_for(width))
                    : static_cast<int64_t>(v);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw TermError(msg);
}

} // namespace

TermNode::TermNode() { ++g_live_nodes; }
TermNode::~TermNode() { --g_live_nodes; }

int64_t live_term_nodes() { return g_live_nodes; }

OpClass op_class(OpTag tag) {
  switch (tag) {
    case OpTag::Add: case OpTag::Sub: case OpTag::Mul:
    case OpTag::Udiv: case OpTag::Urem:
      return OpClass::Arithmetic;
    case OpTag::And: case OpTag::Or: case OpTag::Xor: case OpTag::Not:
      return OpClass::Bitwise;
    case OpTag::Shl: case OpTag::Lshr: case OpTag::Ashr:
      return OpClass::Shift;
    case OpTag::Eq: case OpTag::Ne: case OpTag::Ult: case OpTag::Ule:
    case OpTag::Slt: case OpTag::Sle:
      return OpClass::Relational;
    case OpTag::Ite: case OpTag::Zext: case OpTag::Sext:
    case OpTag::Extract: case OpTag::Concat:
      return OpClass::Structural;
  }
  return OpClass::Structural;
}

std::string_view op_name(OpTag tag) {
  switch (tag) {
    case OpTag::Add: return "add";
    case OpTag::Sub: return "sub";
    case OpTag::Mul: return "mul";
    case OpTag::Udiv: return "udiv";
    case OpTag::Urem: return "urem";
    case OpTag::And: return "and";
    case OpTag::Or: return "or";
    case OpTag::Xor: return "xor";
    case OpTag::Not: return "not";
    case OpTag::Shl: return "shl";
    case OpTag::Lshr: return "lshr";
    case OpTag::Ashr: return "ashr";
    case OpTag::Eq: return "eq";
    case OpTag::Ne: return "ne";
    case OpTag::Ult: return "ult";
    case OpTag::Ule: return "ule";
    case OpTag::Slt: return "slt";
    case OpTag::Sle: return "sle";
    case OpTag::Ite: return "ite";
    case OpTag::Zext: return "zext";
    case OpTag::Sext: return "sext";
    case OpTag::Extract: return "extract";
    case OpTag::Concat: return "concat";
  }
  return "?";
}

Kind Term::kind() const { return node_->kind; }
unsigned Term::width() const { return node_->width; }

uint64_t Term::const_value() const {
  assert(is_const());
  return node_->value;
}

SymbolId Term::symbol_id() const {
  assert(is_symbol());
  return node_->sym_id;
}

const std::string& Term::symbol_name() const {
  assert(is_symbol());
  return node_->sym_name;
}

OpTag Term::tag() const { return node_->tag; }
size_t Term::num_operands() const { return node_->ops.size(); }
const Term& Term::operand(size_t i) const { return node_->ops[i]; }
unsigned Term::hi() const { return node_->aux0; }
unsigned Term::lo() const { return node_->aux1; }
unsigned Term::ext_width() const { return node_->aux0; }
unsigned Term::index_width() const { return node_->index_width; }
const std::vector<Term>& Term::cells() const { return node_->ops; }

Term mk_const(unsigned width, uint64_t value) {
  require(width >= 1 && width <= kMaxWidth, "mk_const: width out of [1,64]");
  require(width == 64 || value <= mask_for(width),
          "mk_const: value does not fit width");
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Constant;
  n->width = width;
  n->value = value;
  return Term(std::move(n));
}

Term mk_symbol(std::string name, unsigned width, SymbolId id) {
  require(!name.empty(), "mk_symbol: empty name");
  require(width >= 1 && width <= kMaxWidth, "mk_symbol: width out of [1,64]");
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Symbol;
  n->width = width;
  n->sym_id = id;
  n->sym_name = std::move(name);
  return Term(std::move(n));
}

namespace {

// Shared two's-complement semantics, also used by eval().
uint64_t compute_op(OpTag tag, unsigned width, const uint64_t* v, size_t n,
                    unsigned aux0, unsigned aux1, unsigned op0_width) {
  const uint64_t m = mask_for(width);
  switch (tag) {
    case OpTag::Add: return (v[0] + v[1]) & m;
    case OpTag::Sub: return (v[0] - v[1]) & m;
    case OpTag::Mul: return (v[0] * v[1]) & m;
    case OpTag::Udiv: return v[1] == 0 ? m : (v[0] / v[1]) & m;
    case OpTag::Urem: return v[1] == 0 ? v[0] : (v[0] % v[1]) & m;
    case OpTag::And: return v[0] & v[1];
    case OpTag::Or: return v[0] | v[1];
    case OpTag::Xor: return v[0] ^ v[1];
    case OpTag::Not: return ~v[0] & m;
    case OpTag::Shl: return v[1] >= width ? 0 : (v[0] << v[1]) & m;
    case OpTag::Lshr: return v[1] >= width ? 0 : v[0] >> v[1];
    case OpTag::Ashr: {
      bool neg = (v[0] >> (width - 1)) & 1;
      if (v[1] >= width) return neg ? m : 0;
      uint64_t r = v[0] >> v[1];
      if (neg) r |= m & ~(mask_for(width - static_cast<unsigned>(v[1])));
      return r & m;
    }
    case OpTag::Eq: return v[0] == v[1];
    case OpTag::Ne: return v[0] != v[1];
    case OpTag::Ult: return v[0] < v[1];
    case OpTag::Ule: return v[0] <= v[1];
    case OpTag::Slt: return to_signed(v[0], op0_width) < to_signed(v[1], op0_width);
    case OpTag::Sle: return to_signed(v[0], op0_width) <= to_signed(v[1], op0_width);
    case OpTag::Ite: return v[0] ? v[1] : v[2];
    case OpTag::Zext: return v[0];
    case OpTag::Sext: {
      uint64_t r = static_cast<uint64_t>(to_signed(v[0], op0_width));
      return r & m;
    }
    case OpTag::Extract: return (v[0] >> aux1) & mask_for(aux0 - aux1 + 1);
    case OpTag::Concat: return ((v[0] << aux1) | v[1]) & m;
  }
  (void)n;
  throw TermError("compute_op: bad tag");
}

Term make_op(OpTag tag, unsigned width, std::vector<Term> ops, unsigned aux0 = 0,
             unsigned aux1 = 0) {
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Op;
  n->tag = tag;
  n->width = width;
  n->aux0 = aux0;
  n->aux1 = aux1;
  n->ops = std::move(ops);
  return Term(std::move(n));
}

} // namespace

Term apply(OpTag tag, std::vector<Term> operands) {
  for (const auto& t : operands)
    require(t.valid(), "apply: null operand");

  unsigned width = 0;
  unsigned aux0 = 0, aux1 = 0;
  const OpClass cls = op_class(tag);

  switch (tag) {
    case OpTag::Not:
      require(operands.size() == 1, "apply: not expects 1 operand");
      width = operands[0].width();
      break;
    case OpTag::Ite:
      require(operands.size() == 3, "apply: ite expects 3 operands");
      require(operands[0].width() == 1, "apply: ite condition must be width 1");
      require(operands[1].width() == operands[2].width(),
              "apply: ite arm widths differ");
      width = operands[1].width();
      break;
    case OpTag::Concat:
      require(operands.size() == 2, "apply: concat expects 2 operands");
      width = operands[0].width() + operands[1].width();
      require(width <= kMaxWidth, "apply: concat result exceeds 64 bits");
      aux1 = operands[1].width(); // shift amount for the high part
      break;
    case OpTag::Zext:
    case OpTag::Sext:
    case OpTag::Extract:
      throw TermError("apply: use apply_ext/apply_extract for this tag");
    default:
      require(operands.size() == 2, "apply: binary operator expects 2 operands");
      require(operands[0].width() == operands[1].width(),
              "apply: operand widths differ");
      width = (cls == OpClass::Relational) ? 1 : operands[0].width();
      break;
  }

  // Constant fold.
  bool all_const = true;
  for (const auto& t : operands)
    if (!t.is_const()) { all_const = false; break; }
  if (all_const) {
    uint64_t vals[3];
    for (size_t i = 0; i < operands.size(); ++i) vals[i] = operands[i].const_value();
    uint64_t r = compute_op(tag, width, vals, operands.size(), aux0, aux1,
                            operands[0].width());
    return mk_const(width, r);
  }

  // Syntactic-identity folds, exactly the documented set.
  if (operands.size() == 2 && struct_eq(operands[0], operands[1])) {
    switch (tag) {
      case OpTag::Eq: return mk_const(1, 1);
      case OpTag::Xor: return mk_const(width, 0);
      case OpTag::And: return operands[0];
      case OpTag::Or: return operands[0];
      case OpTag::Sub: return mk_const(width, 0);
      default: break;
    }
  }

  return make_op(tag, width, std::move(operands), aux0, aux1);
}

Term apply_extract(const Term& t, unsigned hi, unsigned lo) {
  require(t.valid(), "extract: null operand");
  require(hi >= lo && hi < t.width(), "extract: bad bit range");
  unsigned width = hi - lo + 1;
  if (t.is_const())
    return mk_const(width, (t.const_value() >> lo) & mask_for(width));
  return make_op(OpTag::Extract, width, {t}, hi, lo);
}

Term apply_ext(OpTag tag, const Term& t, unsigned new_width) {
  require(tag == OpTag::Zext || tag == OpTag::Sext, "apply_ext: bad tag");
  require(t.valid(), "ext: null operand");
  require(new_width >= t.width() && new_width <= kMaxWidth,
          "ext: target width must be in [operand width, 64]");
  if (new_width == t.width()) return t;
  if (t.is_const()) {
    uint64_t v = t.const_value();
    if (tag == OpTag::Sext)
      v = static_cast<uint64_t>(to_signed(v, t.width())) & mask_for(new_width);
    return mk_const(new_width, v);
  }
  return make_op(tag, new_width, {t}, new_width);
}

Term add(const Term& a, const Term& b) { return apply(OpTag::Add, {a, b}); }
Term sub(const Term& a, const Term& b) { return apply(OpTag::Sub, {a, b}); }
Term mul(const Term& a, const Term& b) { return apply(OpTag::Mul, {a, b}); }
Term udiv(const Term& a, const Term& b) { return apply(OpTag::Udiv, {a, b}); }
Term urem(const Term& a, const Term& b) { return apply(OpTag::Urem, {a, b}); }
Term and_(const Term& a, const Term& b) { return apply(OpTag::And, {a, b}); }
Term or_(const Term& a, const Term& b) { return apply(OpTag::Or, {a, b}); }
Term xor_(const Term& a, const Term& b) { return apply(OpTag::Xor, {a, b}); }
Term not_(const Term& a) { return apply(OpTag::Not, {a}); }
Term shl(const Term& a, const Term& amount) { return apply(OpTag::Shl, {a, amount}); }
Term lshr(const Term& a, const Term& amount) { return apply(OpTag::Lshr, {a, amount}); }
Term ashr(const Term& a, const Term& amount) { return apply(OpTag::Ashr, {a, amount}); }
Term eq(const Term& a, const Term& b) { return apply(OpTag::Eq, {a, b}); }
Term ne(const Term& a, const Term& b) { return apply(OpTag::Ne, {a, b}); }
Term ult(const Term& a, const Term& b) { return apply(OpTag::Ult, {a, b}); }
Term ule(const Term& a, const Term& b) { return apply(OpTag::Ule, {a, b}); }
Term slt(const Term& a, const Term& b) { return apply(OpTag::Slt, {a, b}); }
Term sle(const Term& a, const Term& b) { return apply(OpTag::Sle, {a, b}); }
Term ite(const Term& c, const Term& t, const Term& e) {
  return apply(OpTag::Ite, {c, t, e});
}
Term zext(const Term& t, unsigned new_width) { return apply_ext(OpTag::Zext, t, new_width); }
Term sext(const Term& t, unsigned new_width) { return apply_ext(OpTag::Sext, t, new_width); }
Term extract(const Term& t, unsigned hi, unsigned lo) { return apply_extract(t, hi, lo); }
Term concat(const Term& hi, const Term& lo) { return apply(OpTag::Concat, {hi, lo}); }

Term mk_array(unsigned index_width, std::vector<Term> cells) {
  require(index_width >= 1 && index_width <= kMaxWidth, "mk_array: bad index width");
  require(!cells.empty(), "mk_array: empty literal");
  require(index_width == 64 || cells.size() <= (uint64_t{1} << index_width),
          "mk_array: more cells than the index width addresses");
  for (const auto& c : cells)
    require(c.valid() && c.width() == 8, "mk_array: cells must be width 8");
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::ArrayLit;
  n->width = 8;
  n->index_width = index_width;
  n->ops = std::move(cells);
  return Term(std::move(n));
}

Term mk_store(const Term& array, const Term& index, const Term& value) {
  require(array.valid() && (array.kind() == Kind::ArrayLit || array.kind() == Kind::Store),
          "mk_store: not an array");
  require(index.valid() && index.width() == array.index_width(),
          "mk_store: index width mismatch");
  require(value.valid() && value.width() == 8, "mk_store: value must be width 8");
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Store;
  n->width = 8;
  n->index_width = array.index_width();
  n->ops = {array, index, value};
  return Term(std::move(n));
}

Term mk_select(const Term& array, const Term& index) {
  require(array.valid() && (array.kind() == Kind::ArrayLit || array.kind() == Kind::Store),
          "mk_select: not an array");
  require(index.valid() && index.width() == array.index_width(),
          "mk_select: index width mismatch");

  // Concrete-index resolution through concrete-index stores.
  if (index.is_const()) {
    uint64_t want = index.const_value();
    Term a = array;
    for (;;) {
      if (a.kind() == Kind::Store) {
        const Term& si = a.operand(1);
        if (!si.is_const()) break; // a symbolic store shadows everything below
        if (si.const_value() == want) return a.operand(2);
        a = a.operand(0);
        continue;
      }
      // ArrayLit.
      if (want < a.cells().size()) return a.cells()[want];
      break; // out of literal; leave unresolved (engine keeps indices bounded)
    }
  }

  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Select;
  n->width = 8;
  n->index_width = array.index_width();
  n->ops = {array, index};
  return Term(std::move(n));
}

bool struct_eq(const Term& a, const Term& b) {
  if (a.node() == b.node()) return true;
  if (!a.valid() || !b.valid()) return false;
  const TermNode* x = a.node();
  const TermNode* y = b.node();
  if (x->kind != y->kind || x->width != y->width) return false;
  switch (x->kind) {
    case Kind::Constant: return x->value == y->value;
    case Kind::Symbol: return x->sym_id == y->sym_id;
    default: break;
  }
  if (x->kind == Kind::Op && x->tag != y->tag) return false;
  if (x->aux0 != y->aux0 || x->aux1 != y->aux1) return false;
  if (x->index_width != y->index_width) return false;
  if (x->ops.size() != y->ops.size()) return false;
  for (size_t i = 0; i < x->ops.size(); ++i)
    if (!struct_eq(x->ops[i], y->ops[i])) return false;
  return true;
}

namespace {

uint64_t g_eval_epoch = 0;

uint64_t eval_node(const TermNode* n, const Assignment& env);

uint64_t eval_select(const TermNode* n, const Assignment& env) {
  uint64_t idx = eval_node(n->ops[1].node(), env);
  const TermNode* a = n->ops[0].node();
  for (;;) {
    if (a->kind == Kind::Store) {
      uint64_t si = eval_node(a->ops[1].node(), env);
      if (si == idx) return eval_node(a->ops[2].node(), env);
      a = a->ops[0].node();
      continue;
    }
    // ArrayLit; cells outside the literal read as zero by convention.
    if (idx < a->ops.size()) return eval_node(a->ops[idx].node(), env);
    return 0;
  }
}

uint64_t eval_node(const TermNode* n, const Assignment& env) {
  if (n->eval_epoch == g_eval_epoch) return n->eval_value;
  uint64_t r = 0;
  switch (n->kind) {
    case Kind::Constant:
      r = n->value;
      break;
    case Kind::Symbol: {
      auto it = env.find(n->sym_id);
      if (it == env.end())
        throw TermError("eval: unbound symbol '" + n->sym_name + "'");
      r = it->second & mask_for(n->width);
      break;
    }
    case Kind::Op: {
      uint64_t vals[3];
      for (size_t i = 0; i < n->ops.size(); ++i)
        vals[i] = eval_node(n->ops[i].node(), env);
      r = compute_op(n->tag, n->width, vals, n->ops.size(), n->aux0, n->aux1,
                     n->ops[0].node()->width);
      break;
    }
    case Kind::Select:
      r = eval_select(n, env);
      break;
    case Kind::ArrayLit:
    case Kind::Store:
      throw TermError("eval: array value has no scalar meaning");
  }
  n->eval_epoch = g_eval_epoch;
  n->eval_value = r;
  return r;
}

} // namespace

uint64_t eval(const Term& t, const Assignment& env) {
  require(t.valid(), "eval: null term");
  ++g_eval_epoch;
  return eval_node(t.node(), env);
}

EvalSession::EvalSession(const Assignment& env) : env_(env) { ++g_eval_epoch; }

uint64_t EvalSession::value(const Term& t) {
  require(t.valid(), "eval: null term");
  return eval_node(t.node(), env_);
}

namespace {

Term substitute_node(const Term& t, const Assignment& env,
                     std::unordered_map<const TermNode*, Term>& memo) {
  auto it = memo.find(t.node());
  if (it != memo.end()) return it->second;

  Term r;
  switch (t.kind()) {
    case Kind::Constant:
      r = t;
      break;
    case Kind::Symbol: {
      auto e = env.find(t.symbol_id());
      r = (e == env.end()) ? t : mk_const(t.width(), e->second & mask_for(t.width()));
      break;
    }
    case Kind::Op: {
      std::vector<Term> ops;
      ops.reserve(t.num_operands());
      bool changed = false;
      for (size_t i = 0; i < t.num_operands(); ++i) {
        Term c = substitute_node(t.operand(i), env, memo);
        changed |= c.node() != t.operand(i).node();
        ops.push_back(std::move(c));
      }
      if (!changed) {
        r = t;
      } else if (t.tag() == OpTag::Extract) {
        r = apply_extract(ops[0], t.hi(), t.lo());
      } else if (t.tag() == OpTag::Zext || t.tag() == OpTag::Sext) {
        r = apply_ext(t.tag(), ops[0], t.ext_width());
      } else {
        r = apply(t.tag(), std::move(ops));
      }
      break;
    }
    case Kind::ArrayLit: {
      std::vector<Term> cells;
      cells.reserve(t.cells().size());
      bool changed = false;
      for (const auto& c : t.cells()) {
        Term nc = substitute_node(c, env, memo);
        changed |= nc.node() != c.node();
        cells.push_back(std::move(nc));
      }
      r = changed ? mk_array(t.index_width(), std::move(cells)) : t;
      break;
    }
    case Kind::Store: {
      Term a = substitute_node(t.operand(0), env, memo);
      Term i = substitute_node(t.operand(1), env, memo);
      Term v = substitute_node(t.operand(2), env, memo);
      r = mk_store(a, i, v);
      break;
    }
    case Kind::Select: {
      Term a = substitute_node(t.operand(0), env, memo);
      Term i = substitute_node(t.operand(1), env, memo);
      r = mk_select(a, i);
      break;
    }
  }
  memo.emplace(t.node(), r);
  return r;
}

} // namespace

Term substitute(const Term& t, const Assignment& env) {
  require(t.valid(), "substitute: null term");
  std::unordered_map<const TermNode*, Term> memo;
  return substitute_node(t, env, memo);
}

namespace {

void collect_node(const TermNode* n, std::map<SymbolId, SymbolInfo>& out,
                  std::unordered_set<const TermNode*>& seen) {
  if (!seen.insert(n).second) return;
  if (n->kind == Kind::Symbol) {
    out.emplace(n->sym_id, SymbolInfo{n->sym_id, n->sym_name, n->width});
    return;
  }
  for (const auto& c : n->ops) collect_node(c.node(), out, seen);
}

} // namespace

void collect_symbols(const Term& t, std::map<SymbolId, SymbolInfo>& out) {
  if (!t.valid()) return;
  std::unordered_set<const TermNode*> seen;
  collect_node(t.node(), out, seen);
}

namespace {

void print_node(const TermNode* n, std::ostringstream& os) {
  switch (n->kind) {
    case Kind::Constant:
      os << n->value << ":" << n->width;
      return;
    case Kind::Symbol:
      os << n->sym_name;
      return;
    case Kind::Op:
      os << "(" << op_name(n->tag);
      if (n->tag == OpTag::Extract) os << "[" << n->aux0 << ":" << n->aux1 << "]";
      if (n->tag == OpTag::Zext || n->tag == OpTag::Sext) os << "->" << n->aux0;
      for (const auto& c : n->ops) {
        os << " ";
        print_node(c.node(), os);
      }
      os << ")";
      return;
    case Kind::ArrayLit:
      os << "(array " << n->ops.size() << " cells)";
      return;
    case Kind::Store:
      os << "(store ";
      print_node(n->ops[0].node(), os);
      os << " ";
      print_node(n->ops[1].node(), os);
      os << " ";
      print_node(n->ops[2].node(), os);
      os << ")";
      return;
    case Kind::Select:
      os << "(select ";
      print_node(n->ops[0].node(), os);
      os << " ";
      print_node(n->ops[1].node(), os);
      os << ")";
      return;
  }
}

} // namespace

std::string to_string(const Term& t) {
  if (!t.valid()) return "<null>";
  std::ostringstream os;
  print_node(t.node(), os);
  return os.str();
}

Term SymbolTable::fresh(const std::string& name, unsigned width) {
  for (const auto& s : symbols_)
    if (s.name == name)
      throw TermError("symbol '" + name + "' already declared in this test");
  Term t = mk_symbol(name, width, next_id_);
  symbols_.push_back(SymbolInfo{next_id_, name, width});
  ++next_id_;
  return t;
}

const SymbolInfo* SymbolTable::find(SymbolId id) const {
  for (const auto& s : symbols_)
    if (s.id == id) return &s;
  return nullptr;
}

} // namespace symx
