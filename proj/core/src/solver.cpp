// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace symx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

void PathCondition::append(Term constraint) {
  if (!constraint.valid() || constraint.width() != 1)
    throw SolverError("path condition constraints must have width 1");
  constraints_.push_back(std::move(constraint));
}

// --- SMT-LIB2 serialization -------------------------------------------------

namespace {

bool is_simple_smt_name(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string smt_symbol_name(const SymbolInfo& info) {
  if (is_simple_smt_name(info.name)) return info.name;
  std::string out = "sym";
  for (char c : info.name)
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  out += "_" + std::to_string(info.id);
  return out;
}

std::string bv_literal(uint64_t value, unsigned width) {
  std::ostringstream os;
  if (width % 4 == 0) {
    os << "#x";
    for (int nib = static_cast<int>(width) / 4 - 1; nib >= 0; --nib)
      os << "0123456789abcdef"[(value >> (nib * 4)) & 0xF];
  } else {
    os << "#b";
    for (int bit = static_cast<int>(width) - 1; bit >= 0; --bit)
      os << (((value >> bit) & 1) ? '1' : '0');
  }
  return os.str();
}

struct Serializer {
  std::ostringstream defs;
  std::unordered_map<const TermNode*, std::string> names;
  std::unordered_map<const TermNode*, unsigned> refs;
  std::unordered_map<SymbolId, std::string> sym_names;
  unsigned next_def = 0;
  unsigned next_arr = 0;

  void count_refs(const TermNode* n) {
    if (++refs[n] > 1) return;
    for (const auto& c : n->ops) count_refs(c.node());
  }

  std::string scalar_sort(unsigned width) {
    return "(_ BitVec " + std::to_string(width) + ")";
  }
  std::string array_sort(unsigned index_width) {
    return "(Array (_ BitVec " + std::to_string(index_width) + ") (_ BitVec 8))";
  }

  // Boolean rendering for assert position: relational roots become plain
  // Bool terms instead of the (ite ... #b1 #b0) bitvector encoding.
  std::string emit_bool(const TermNode* n) {
    if (n->kind == Kind::Constant) return n->value ? "true" : "false";
    if (n->kind == Kind::Op) {
      auto bin = [&](const char* op) {
        return std::string("(") + op + " " + emit(n->ops[0].node()) + " " +
               emit(n->ops[1].node()) + ")";
      };
      switch (n->tag) {
        case OpTag::Eq: return bin("=");
        case OpTag::Ne: return "(not " + bin("=") + ")";
        case OpTag::Ult: return bin("bvult");
        case OpTag::Ule: return bin("bvule");
        case OpTag::Slt: return bin("bvslt");
        case OpTag::Sle: return bin("bvsle");
        default: break;
      }
    }
    return "(= " + emit(n) + " #b1)";
  }

  // Returns the printable name/expression for n, emitting define-funs for
  // shared interior nodes so the script stays linear in the DAG size.
  std::string emit(const TermNode* n) {
    auto it = names.find(n);
    if (it != names.end()) return it->second;

    std::string expr = render(n);
    bool shared = refs[n] > 1;
    bool is_leaf = n->kind == Kind::Constant || n->kind == Kind::Symbol;
    if (!shared || is_leaf) {
      // Leaves and single-use nodes stay inline; array literals are always
      // named so each gets exactly one base declaration.
      if (n->kind != Kind::ArrayLit) {
        names.emplace(n, expr);
        return expr;
      }
    }
    std::string name = "t" + std::to_string(next_def++);
    std::string sort = (n->kind == Kind::ArrayLit || n->kind == Kind::Store)
                           ? array_sort(n->index_width)
                           : scalar_sort(n->width);
    defs << "(define-fun " << name << " () " << sort << " " << expr << ")\n";
    names.emplace(n, name);
    return name;
  }

  std::string render(const TermNode* n) {
    switch (n->kind) {
      case Kind::Constant:
        return bv_literal(n->value, n->width);
      case Kind::Symbol:
        return sym_names.at(n->sym_id);
      case Kind::ArrayLit: {
        std::string base = "arr" + std::to_string(next_arr++);
        defs << "(declare-fun " << base << " () " << array_sort(n->index_width)
             << ")\n";
        std::string out = base;
        for (size_t i = 0; i < n->ops.size(); ++i) {
          out = "(store " + out + " " +
                bv_literal(static_cast<uint64_t>(i), n->index_width) + " " +
                emit(n->ops[i].node()) + ")";
        }
        return out;
      }
      case Kind::Store:
        return "(store " + emit(n->ops[0].node()) + " " + emit(n->ops[1].node()) +
               " " + emit(n->ops[2].node()) + ")";
      case Kind::Select:
        return "(select " + emit(n->ops[0].node()) + " " + emit(n->ops[1].node()) +
               ")";
      case Kind::Op:
        break;
    }

    auto bin = [&](const char* op) {
      return std::string("(") + op + " " + emit(n->ops[0].node()) + " " +
             emit(n->ops[1].node()) + ")";
    };
    auto rel = [&](const char* op) {
      return "(ite " + bin(op) + " #b1 #b0)";
    };
    switch (n->tag) {
      case OpTag::Add: return bin("bvadd");
      case OpTag::Sub: return bin("bvsub");
      case OpTag::Mul: return bin("bvmul");
      case OpTag::Udiv: return bin("bvudiv");
      case OpTag::Urem: return bin("bvurem");
      case OpTag::And: return bin("bvand");
      case OpTag::Or: return bin("bvor");
      case OpTag::Xor: return bin("bvxor");
      case OpTag::Not: return "(bvnot " + emit(n->ops[0].node()) + ")";
      case OpTag::Shl: return bin("bvshl");
      case OpTag::Lshr: return bin("bvlshr");
      case OpTag::Ashr: return bin("bvashr");
      case OpTag::Eq: return rel("=");
      case OpTag::Ne: return "(ite (= " + emit(n->ops[0].node()) + " " +
                             emit(n->ops[1].node()) + ") #b0 #b1)";
      case OpTag::Ult: return rel("bvult");
      case OpTag::Ule: return rel("bvule");
      case OpTag::Slt: return rel("bvslt");
      case OpTag::Sle: return rel("bvsle");
      case OpTag::Ite:
        return "(ite (= " + emit(n->ops[0].node()) + " #b1) " +
               emit(n->ops[1].node()) + " " + emit(n->ops[2].node()) + ")";
      case OpTag::Zext:
        return "((_ zero_extend " +
               std::to_string(n->aux0 - n->ops[0].node()->width) + ") " +
               emit(n->ops[0].node()) + ")";
      case OpTag::Sext:
        return "((_ sign_extend " +
               std::to_string(n->aux0 - n->ops[0].node()->width) + ") " +
               emit(n->ops[0].node()) + ")";
      case OpTag::Extract:
        return "((_ extract " + std::to_string(n->aux0) + " " +
               std::to_string(n->aux1) + ") " + emit(n->ops[0].node()) + ")";
      case OpTag::Concat: return bin("concat");
    }
    throw SolverError("serialize: bad op");
  }
};

std::vector<Term> gather_constraints(const PathCondition& pc,
                                     std::span<const Term> extra) {
  std::vector<Term> all(pc.constraints());
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

std::map<SymbolId, SymbolInfo> gather_symbols(const std::vector<Term>& constraints) {
  std::map<SymbolId, SymbolInfo> syms;
  for (const auto& c : constraints) collect_symbols(c, syms);
  return syms;
}

} // namespace

std::string serialize_query(const PathCondition& pc, std::span<const Term> extra,
                            bool want_model) {
  std::vector<Term> constraints = gather_constraints(pc, extra);
  auto syms = gather_symbols(constraints);

  Serializer ser;
  std::ostringstream body;
  for (const auto& [id, info] : syms) {
    std::string name = smt_symbol_name(info);
    ser.sym_names.emplace(id, name);
    ser.defs << "(declare-fun " << name << " () (_ BitVec " << info.width
             << "))\n";
  }
  for (const auto& c : constraints) ser.count_refs(c.node());
  for (const auto& c : constraints)
    body << "(assert " << ser.emit_bool(c.node()) << ")\n";

  std::ostringstream out;
  out << "(set-logic QF_ABV)\n" << ser.defs.str() << body.str() << "(check-sat)\n";
  if (want_model)
    for (const auto& [id, info] : syms)
      out << "(get-value (" << ser.sym_names.at(id) << "))\n";
  out << "(exit)\n";
  return out.str();
}

namespace {

void count_cells_node(const TermNode* n, std::unordered_set<const TermNode*>& seen,
                      uint64_t& cells) {
  if (!seen.insert(n).second) return;
  if (n->kind == Kind::ArrayLit) cells += n->ops.size();
  for (const auto& c : n->ops) count_cells_node(c.node(), seen, cells);
}

} // namespace

uint64_t count_array_cells(const PathCondition& pc, std::span<const Term> extra) {
  std::unordered_set<const TermNode*> seen;
  uint64_t cells = 0;
  for (const auto& c : pc.constraints()) count_cells_node(c.node(), seen, cells);
  for (const auto& c : extra) count_cells_node(c.node(), seen, cells);
  return cells;
}

// --- Base Solver ------------------------------------------------------------

QueryResult Solver::check_sat(const PathCondition& pc, std::span<const Term> extra,
                              bool want_model) {
  for (const auto& c : extra)
    if (!c.valid() || c.width() != 1)
      throw SolverError("check_sat: constraints must have width 1");

  stats_.query_count++;
  stats_.array_cells += count_array_cells(pc, extra);

  auto start = Clock::now();
  QueryResult r = do_check_sat(pc, extra, want_model);
  r.elapsed_s = seconds_since(start);
  stats_.total_solver_time_s += r.elapsed_s;
  if (r.verdict == Verdict::Unknown) stats_.timeout_count++;
  return r;
}

bool Solver::may_equal(const Term& t, const Term& v, const PathCondition& pc) {
  if (t.width() != v.width()) throw SolverError("may_equal: width mismatch");
  QueryResult r = check_sat(pc, {eq(t, v)});
  // Unknown is treated as "may": inclusion on uncertainty keeps the
  // minimisation over-approximating.
  return r.verdict != Verdict::Unsat;
}

std::optional<uint64_t> Solver::solve_min(const Term& t, const PathCondition& pc) {
  const unsigned w = t.width();
  const uint64_t max = w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;

  QueryResult alive = check_sat(pc, {ule(t, mk_const(w, max))});
  if (alive.verdict == Verdict::Unsat)
    throw SolverError("no extremum on dead path");
  if (alive.verdict == Verdict::Unknown) return std::nullopt;

  uint64_t lo = 0, hi = max;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    QueryResult r = check_sat(pc, {ule(t, mk_const(w, mid))});
    if (r.verdict == Verdict::Unknown) return std::nullopt;
    if (r.verdict == Verdict::Sat)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::optional<uint64_t> Solver::solve_max(const Term& t, const PathCondition& pc) {
  const unsigned w = t.width();
  const uint64_t max = w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;

  QueryResult alive = check_sat(pc, {ule(mk_const(w, 0), t)});
  if (alive.verdict == Verdict::Unsat)
    throw SolverError("no extremum on dead path");
  if (alive.verdict == Verdict::Unknown) return std::nullopt;

  uint64_t lo = 0, hi = max;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    QueryResult r = check_sat(pc, {ule(mk_const(w, mid), t)});
    if (r.verdict == Verdict::Unknown) return std::nullopt;
    if (r.verdict == Verdict::Sat)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// --- Built-in enumerative backend --------------------------------------------

QueryResult BuiltinSolver::do_check_sat(const PathCondition& pc,
                                        std::span<const Term> extra,
                                        bool want_model) {
  std::vector<Term> constraints = gather_constraints(pc, extra);
  auto sym_map = gather_symbols(constraints);

  std::vector<SymbolInfo> syms;
  unsigned total_bits = 0;
  for (const auto& [id, info] : sym_map) {
    syms.push_back(info);
    total_bits += info.width;
  }
  if (total_bits > max_bits_) {
    QueryResult r;
    r.verdict = Verdict::Unknown;
    r.note = "enumeration budget exceeded (" + std::to_string(total_bits) +
             " symbolic bits > " + std::to_string(max_bits_) + ")";
    return r;
  }

  auto start = Clock::now();
  Assignment env;
  for (const auto& s : syms) env[s.id] = 0;

  auto satisfied = [&]() {
    EvalSession session(env);
    for (const auto& c : constraints)
      if (session.value(c) == 0) return false;
    return true;
  };

  QueryResult r;
  uint64_t iter = 0;
  for (;;) {
    if ((++iter & 0x7FF) == 0 && seconds_since(start) > timeout_s_) {
      r.verdict = Verdict::Unknown;
      r.note = "timeout";
      return r;
    }
    if (satisfied()) {
      r.verdict = Verdict::Sat;
      if (want_model) r.model = env;
      return r;
    }
    // Odometer: last symbol fastest, so assignments come out in
    // lexicographic symbol-id order and the first hit is the least model.
    size_t i = syms.size();
    bool done = true;
    while (i > 0) {
      --i;
      uint64_t& v = env[syms[i].id];
      uint64_t limit = syms[i].width >= 64 ? 0 : (uint64_t{1} << syms[i].width);
      if (++v < limit) {
        done = false;
        break;
      }
      v = 0;
    }
    if (done && !syms.empty()) break;
    if (syms.empty()) break;
  }
  r.verdict = Verdict::Unsat;
  return r;
}

// --- External subprocess backend ---------------------------------------------

namespace {

struct ProcOutcome {
  bool spawned = false;
  bool timed_out = false;
  std::string out;
};

ProcOutcome run_process(const std::vector<std::string>& argv,
                        const std::string& input, double timeout_s) {
  // A solver that exits before reading its script must not SIGPIPE us.
  static const bool sigpipe_ignored = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  ProcOutcome res;
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) return res;

  pid_t pid = fork();
  if (pid < 0) return res;
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> cargv;
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);

  res.spawned = true;
  auto start = Clock::now();
  size_t written = 0;
  bool stdin_open = true;
  char buf[4096];

  for (;;) {
    double remain = timeout_s - seconds_since(start);
    if (remain <= 0) {
      res.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    struct pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (stdin_open) fds[nfds++] = {in_pipe[1], POLLOUT, 0};

    int pr = poll(fds, nfds, std::max(1, static_cast<int>(remain * 1000)));
    if (pr < 0) break;

    if (fds[0].revents & (POLLIN | POLLHUP)) {
      ssize_t n = read(out_pipe[0], buf, sizeof(buf));
      if (n > 0)
        res.out.append(buf, static_cast<size_t>(n));
      else if (n == 0)
        break; // solver closed stdout
    }
    if (stdin_open && nfds > 1 && (fds[1].revents & (POLLOUT | POLLERR))) {
      if (written < input.size()) {
        ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<size_t>(n);
        if (n < 0 && errno != EAGAIN) {
          close(in_pipe[1]);
          stdin_open = false;
        }
      }
      if (written >= input.size()) {
        close(in_pipe[1]);
        stdin_open = false;
      }
    }
  }

  if (stdin_open) close(in_pipe[1]);
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  return res;
}

std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream is(cmd);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> tokenize_sexpr(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
      toks.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

std::optional<uint64_t> parse_bv_value(const std::vector<std::string>& toks,
                                       size_t& i) {
  if (i >= toks.size()) return std::nullopt;
  const std::string& t = toks[i];
  if (t.rfind("#x", 0) == 0) {
    ++i;
    return std::stoull(t.substr(2), nullptr, 16);
  }
  if (t.rfind("#b", 0) == 0) {
    ++i;
    return std::stoull(t.substr(2), nullptr, 2);
  }
  // (_ bvN W)
  if (t == "(" && i + 3 < toks.size() && toks[i + 1] == "_" &&
      toks[i + 2].rfind("bv", 0) == 0) {
    uint64_t v = std::stoull(toks[i + 2].substr(2));
    i += 4; // skip "(", "_", "bvN"; then expect width and ")"
    if (i < toks.size() && toks[i] == ")") ++i;
    return v;
  }
  return std::nullopt;
}

} // namespace

QueryResult ExternalSolver::do_check_sat(const PathCondition& pc,
                                         std::span<const Term> extra,
                                         bool want_model) {
  QueryResult r;
  std::string script = serialize_query(pc, extra, want_model);
  std::vector<std::string> argv = split_command(command_);
  if (argv.empty()) {
    r.note = "empty solver command";
    return r;
  }

  ProcOutcome proc = run_process(argv, script, timeout_s_);
  if (!proc.spawned) {
    r.note = "failed to spawn '" + command_ + "'";
    return r;
  }
  if (proc.timed_out) {
    r.note = "timeout";
    return r;
  }

  std::istringstream is(proc.out);
  std::string line, verdict_line;
  std::string rest;
  while (std::getline(is, line)) {
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (verdict_line.empty() &&
        (trimmed == "sat" || trimmed == "unsat" || trimmed == "unknown")) {
      verdict_line = trimmed;
    } else if (!verdict_line.empty()) {
      rest += line + "\n";
    }
  }

  if (verdict_line == "unsat") {
    r.verdict = Verdict::Unsat;
    return r;
  }
  if (verdict_line != "sat") {
    r.verdict = Verdict::Unknown;
    r.note = verdict_line.empty() ? "unparseable solver output" : "unknown";
    return r;
  }
  r.verdict = Verdict::Sat;
  if (!want_model) return r;

  // Map reported names back to symbol ids.
  std::vector<Term> constraints = gather_constraints(pc, extra);
  auto syms = gather_symbols(constraints);
  std::unordered_map<std::string, SymbolId> by_name;
  for (const auto& [id, info] : syms) by_name.emplace(smt_symbol_name(info), id);

  Assignment model;
  std::vector<std::string> toks = tokenize_sexpr(rest);
  for (size_t i = 0; i + 1 < toks.size(); ++i) {
    auto it = by_name.find(toks[i]);
    if (it == by_name.end()) continue;
    size_t j = i + 1;
    auto v = parse_bv_value(toks, j);
    if (v) model[it->second] = *v;
  }
  for (const auto& [id, info] : syms) {
    if (!model.count(id)) {
      r.verdict = Verdict::Unknown;
      r.note = "model missing symbol '" + info.name + "'";
      return r;
    }
  }
  r.model = std::move(model);
  return r;
}

std::unique_ptr<Solver> make_builtin_solver(unsigned max_bits) {
  return std::make_unique<BuiltinSolver>(max_bits);
}

std::unique_ptr<Solver> make_external_solver(std::string command) {
  return std::make_unique<ExternalSolver>(std::move(command));
}

} // namespace symx
