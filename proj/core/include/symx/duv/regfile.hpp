// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "symx/context.hpp"
#include "symx/symarray.hpp"

namespace symx {

enum class Access : uint8_t { RO, RW };

struct RegSpec {
  std::string name;
  uint32_t offset;
  uint32_t bytes;
  Access access;
};

/// Byte-addressed register file over a SymArray backing. Peek/poke take
/// concrete offsets and bypass interface semantics (direct injection);
/// read/write take Terms and go through the engine's guarded paths.
/// Multi-byte values are little-endian.
class RegisterFile {
public:
  RegisterFile(ExecutionContext& ctx, std::string name, unsigned index_width,
               size_t size, std::vector<RegSpec> layout);

  // -- Direct access (concrete offsets) ---------------------------------
  Term peek_byte(uint32_t offset) const;
  Term peek_word(uint32_t offset) const;
  Term peek_reg(const std::string& reg) const;
  void poke_byte(uint32_t offset, const Term& value);
  void poke_word(uint32_t offset, const Term& value32);
  void poke_reg(const std::string& reg, const Term& value);

  // -- Engine-visible access (Term indices) ------------------------------
  Term read_byte(const Term& index, const std::string& site);
  Term read_word(const Term& base, const std::string& site);
  void write_byte(const Term& index, const Term& value, const std::string& site);
  void write_word(const Term& base, const Term& value32, const std::string& site);

  /// Width-1 predicate: base addresses reg's window.
  Term targets(const RegSpec& reg, const Term& base) const;

  const std::vector<RegSpec>& layout() const { return layout_; }
  const RegSpec* find(const std::string& reg) const;
  const SymArray& backing() const { return mem_; }
  size_t size() const { return mem_.size(); }
  unsigned index_width() const { return mem_.index_width; }
  const std::string& name() const { return name_; }

private:
  ExecutionContext& ctx_;
  std::string name_;
  SymArray mem_;
  std::vector<RegSpec> layout_;
};

} // namespace symx
