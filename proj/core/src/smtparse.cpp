// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/smtparse.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace symx {

namespace {

struct Sexp {
  std::string atom;
  std::vector<Sexp> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  Sexp next() {
    skip_ws();
    if (pos >= text.size()) throw SolverError("smt: unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      Sexp s;
      s.atom = "()";
      for (;;) {
        skip_ws();
        if (pos >= text.size()) throw SolverError("smt: unterminated list");
        if (text[pos] == ')') {
          ++pos;
          return s;
        }
        s.items.push_back(next());
      }
    }
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    Sexp s;
    s.atom = text.substr(start, pos - start);
    return s;
  }
};

struct Script {
  SymbolTable symbols;
  std::map<std::string, Term> env; // symbols, define-funs, declared arrays
  PathCondition pc;
  std::vector<std::string> value_requests;
  bool saw_check_sat = false;
};

unsigned parse_bitvec_width(const Sexp& sort) {
  // (_ BitVec N)
  if (sort.items.size() == 3 && sort.items[0].atom == "_" &&
      sort.items[1].atom == "BitVec")
    return static_cast<unsigned>(std::stoul(sort.items[2].atom));
  throw SolverError("smt: unsupported sort");
}

bool is_array_sort(const Sexp& sort) {
  return sort.items.size() == 3 && sort.items[0].atom == "Array";
}

Term parse_term(const Sexp& e, Script& s);

Term parse_atom(const std::string& a, Script& s) {
  if (a.rfind("#x", 0) == 0)
    return mk_const(static_cast<unsigned>(4 * (a.size() - 2)),
                    std::stoull(a.substr(2), nullptr, 16));
  if (a.rfind("#b", 0) == 0)
    return mk_const(static_cast<unsigned>(a.size() - 2),
                    std::stoull(a.substr(2), nullptr, 2));
  if (a == "true") return mk_const(1, 1);
  if (a == "false") return mk_const(1, 0);
  auto it = s.env.find(a);
  if (it == s.env.end()) throw SolverError("smt: unknown symbol '" + a + "'");
  return it->second;
}

Term parse_term(const Sexp& e, Script& s) {
  if (e.is_atom()) return parse_atom(e.atom, s);
  if (e.items.empty()) throw SolverError("smt: empty application");

  const Sexp& head = e.items[0];

  // ((_ op n) x) forms.
  if (!head.is_atom() && head.items.size() >= 2 && head.items[0].atom == "_") {
    const std::string& op = head.items[1].atom;
    Term x = parse_term(e.items.at(1), s);
    if (op == "zero_extend")
      return zext(x, x.width() + static_cast<unsigned>(std::stoul(head.items[2].atom)));
    if (op == "sign_extend")
      return sext(x, x.width() + static_cast<unsigned>(std::stoul(head.items[2].atom)));
    if (op == "extract")
      return extract(x, static_cast<unsigned>(std::stoul(head.items[2].atom)),
                     static_cast<unsigned>(std::stoul(head.items[3].atom)));
    throw SolverError("smt: unsupported indexed op '" + op + "'");
  }

  const std::string& op = head.atom;
  auto arg = [&](size_t i) { return parse_term(e.items.at(i), s); };

  static const std::map<std::string, OpTag> binary = {
      {"bvadd", OpTag::Add},   {"bvsub", OpTag::Sub},  {"bvmul", OpTag::Mul},
      {"bvudiv", OpTag::Udiv}, {"bvurem", OpTag::Urem}, {"bvand", OpTag::And},
      {"bvor", OpTag::Or},     {"bvxor", OpTag::Xor},  {"bvshl", OpTag::Shl},
      {"bvlshr", OpTag::Lshr}, {"bvashr", OpTag::Ashr}, {"bvult", OpTag::Ult},
      {"bvule", OpTag::Ule},   {"bvslt", OpTag::Slt},  {"bvsle", OpTag::Sle},
      {"concat", OpTag::Concat}};
  auto bit = binary.find(op);
  if (bit != binary.end()) return apply(bit->second, {arg(1), arg(2)});

  if (op == "=") return eq(arg(1), arg(2));
  if (op == "distinct") return ne(arg(1), arg(2));
  if (op == "not") {
    Term x = arg(1);
    return x.width() == 1 ? eq(x, mk_const(1, 0)) : not_(x);
  }
  if (op == "bvnot") return not_(arg(1));
  if (op == "and") {
    Term acc = arg(1);
    for (size_t i = 2; i < e.items.size(); ++i) acc = and_(acc, arg(i));
    return acc;
  }
  if (op == "or") {
    Term acc = arg(1);
    for (size_t i = 2; i < e.items.size(); ++i) acc = or_(acc, arg(i));
    return acc;
  }
  if (op == "ite") {
    Term c = arg(1);
    return ite(c, arg(2), arg(3));
  }
  if (op == "select") return mk_select(arg(1), arg(2));
  if (op == "store") return mk_store(arg(1), arg(2), arg(3));
  throw SolverError("smt: unsupported operator '" + op + "'");
}

void run_command(const Sexp& cmd, Script& s) {
  if (cmd.items.empty()) return;
  const std::string& op = cmd.items[0].atom;

  if (op == "set-logic" || op == "set-option" || op == "set-info" || op == "exit")
    return;

  if (op == "declare-fun" || op == "declare-const") {
    const std::string& name = cmd.items[1].atom;
    const Sexp& sort = cmd.items.back();
    if (is_array_sort(sort)) {
      unsigned iw = parse_bitvec_width(sort.items[1]);
      // Unconstrained base array; out-of-literal cells read as zero, the
      // same convention the built-in evaluator uses.
      s.env.emplace(name, mk_array(iw, {mk_const(8, 0)}));
    } else {
      s.env.emplace(name, s.symbols.fresh(name, parse_bitvec_width(sort)));
    }
    return;
  }

  if (op == "define-fun") {
    const std::string& name = cmd.items[1].atom;
    s.env.emplace(name, parse_term(cmd.items[4], s));
    return;
  }

  if (op == "assert") {
    Term t = parse_term(cmd.items[1], s);
    if (t.width() != 1) throw SolverError("smt: assert of non-boolean");
    s.pc.append(t);
    return;
  }

  if (op == "check-sat") {
    s.saw_check_sat = true;
    return;
  }

  if (op == "get-value") {
    for (const auto& item : cmd.items[1].items) s.value_requests.push_back(item.atom);
    if (cmd.items[1].is_atom()) s.value_requests.push_back(cmd.items[1].atom);
    return;
  }

  throw SolverError("smt: unsupported command '" + op + "'");
}

std::string format_value(uint64_t v, unsigned width) {
  std::ostringstream os;
  if (width % 4 == 0) {
    os << "#x";
    for (int nib = static_cast<int>(width) / 4 - 1; nib >= 0; --nib)
      os << "0123456789abcdef"[(v >> (nib * 4)) & 0xF];
  } else {
    os << "#b";
    for (int bit = static_cast<int>(width) - 1; bit >= 0; --bit)
      os << (((v >> bit) & 1) ? '1' : '0');
  }
  return os.str();
}

} // namespace

std::string run_smt_script(const std::string& script, unsigned max_bits) {
  Script s;
  Parser parser(script);
  try {
    while (!parser.at_end()) run_command(parser.next(), s);
    if (!s.saw_check_sat) return "unknown\n";

    BuiltinSolver solver(max_bits);
    solver.set_timeout_s(60);
    QueryResult r = solver.check_sat(s.pc, {}, !s.value_requests.empty());
    if (r.verdict == Verdict::Unsat) return "unsat\n";
    if (r.verdict == Verdict::Unknown) return "unknown\n";

    std::ostringstream out;
    out << "sat\n";
    if (r.model) {
      std::map<std::string, std::pair<uint64_t, unsigned>> values;
      for (const auto& info : s.symbols.symbols()) {
        auto it = r.model->find(info.id);
        values[info.name] = {it == r.model->end() ? 0 : it->second, info.width};
      }
      for (const auto& name : s.value_requests) {
        auto it = values.find(name);
        if (it == values.end()) continue;
        out << "((" << name << " " << format_value(it->second.first, it->second.second)
            << "))\n";
      }
    }
    return out.str();
  } catch (const std::exception&) {
    return "unknown\n";
  }
}

} // namespace symx
