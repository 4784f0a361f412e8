// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/duv/regfile.hpp"

namespace symx {

RegisterFile::RegisterFile(ExecutionContext& ctx, std::string name,
                           unsigned index_width, size_t size,
                           std::vector<RegSpec> layout)
    : ctx_(ctx), name_(std::move(name)),
      mem_(SymArray::make(index_width, size, mk_const(8, 0))),
      layout_(std::move(layout)) {
  for (size_t i = 0; i < layout_.size(); ++i) {
    const RegSpec& r = layout_[i];
    if (r.offset % 4 != 0)
      throw ContextError(name_ + ": register " + r.name + " not 4-byte aligned");
    if (r.offset + r.bytes > size)
      throw ContextError(name_ + ": register " + r.name + " exceeds backing");
    for (size_t j = 0; j < i; ++j) {
      const RegSpec& o = layout_[j];
      bool disjoint = r.offset + r.bytes <= o.offset || o.offset + o.bytes <= r.offset;
      if (!disjoint)
        throw ContextError(name_ + ": registers " + r.name + " and " + o.name +
                           " overlap");
    }
  }
}

const RegSpec* RegisterFile::find(const std::string& reg) const {
  for (const auto& r : layout_)
    if (r.name == reg) return &r;
  return nullptr;
}

Term RegisterFile::peek_byte(uint32_t offset) const {
  if (offset >= mem_.size())
    throw ContextError(name_ + ": peek past end");
  return read_raw(mem_, mk_const(mem_.index_width, offset));
}

Term RegisterFile::peek_word(uint32_t offset) const {
  Term w = peek_byte(offset + 3);
  for (int i = 2; i >= 0; --i) w = concat(w, peek_byte(offset + i));
  return w;
}

Term RegisterFile::peek_reg(const std::string& reg) const {
  const RegSpec* r = find(reg);
  if (!r) throw ContextError(name_ + ": no register '" + reg + "'");
  Term v = peek_byte(r->offset + r->bytes - 1);
  for (int i = static_cast<int>(r->bytes) - 2; i >= 0; --i)
    v = concat(v, peek_byte(r->offset + i));
  return v;
}

void RegisterFile::poke_byte(uint32_t offset, const Term& value) {
  mem_ = array_write(mem_, mk_const(mem_.index_width, offset), value);
}

void RegisterFile::poke_word(uint32_t offset, const Term& value32) {
  if (value32.width() != 32) throw ContextError("poke_word: want width 32");
  for (uint32_t i = 0; i < 4; ++i)
    poke_byte(offset + i, extract(value32, 8 * i + 7, 8 * i));
}

void RegisterFile::poke_reg(const std::string& reg, const Term& value) {
  const RegSpec* r = find(reg);
  if (!r) throw ContextError(name_ + ": no register '" + reg + "'");
  if (value.width() != r->bytes * 8)
    throw ContextError("poke_reg: width mismatch for " + reg);
  for (uint32_t i = 0; i < r->bytes; ++i)
    poke_byte(r->offset + i, extract(value, 8 * i + 7, 8 * i));
}

Term RegisterFile::read_byte(const Term& index, const std::string& site) {
  ctx_.checked_bound(index, mem_.size(), site);
  return ctx_.array_read(mem_, index);
}

Term RegisterFile::read_word(const Term& base, const std::string& site) {
  Term bytes[4];
  for (uint32_t i = 0; i < 4; ++i) {
    Term idx = i ? add(base, mk_const(mem_.index_width, i)) : base;
    bytes[i] = read_byte(idx, site);
  }
  Term w = bytes[3];
  for (int i = 2; i >= 0; --i) w = concat(w, bytes[i]);
  return w;
}

void RegisterFile::write_byte(const Term& index, const Term& value,
                              const std::string& site) {
  ctx_.checked_bound(index, mem_.size(), site);
  mem_ = array_write(mem_, index, value);
}

void RegisterFile::write_word(const Term& base, const Term& value32,
                              const std::string& site) {
  if (value32.width() != 32) throw ContextError("write_word: want width 32");
  for (uint32_t i = 0; i < 4; ++i) {
    Term idx = i ? add(base, mk_const(mem_.index_width, i)) : base;
    write_byte(idx, extract(value32, 8 * i + 7, 8 * i), site);
  }
}

Term RegisterFile::targets(const RegSpec& reg, const Term& base) const {
  Term lo = mk_const(mem_.index_width, reg.offset);
  Term hi = mk_const(mem_.index_width, reg.offset + reg.bytes - 1);
  return and_(ule(lo, base), ule(base, hi));
}

} // namespace symx
