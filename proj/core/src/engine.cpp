// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/engine.hpp"

#include <chrono>
#include <deque>
#include <sstream>

namespace symx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

void ExploreConfig::validate() const {
  if (overall_timeout_s <= 0 || solver_timeout_s <= 0)
    throw ConfigError("timeouts must be positive");
  if (memory_budget_nodes == 0 || step_budget == 0 || max_paths == 0 ||
      max_frontier == 0)
    throw ConfigError("budgets must be positive");
  if (solver != "builtin" && solver.rfind("external:", 0) != 0)
    throw ConfigError("solver must be 'builtin' or 'external:<command>'");
  if (solver.rfind("external:", 0) == 0 && solver.size() <= 9)
    throw ConfigError("external solver command is empty");
}

std::map<std::string, std::string> ExploreConfig::echo() const {
  return {
      {"search", "bfs"},
      {"overall_timeout_s", fmt_double(overall_timeout_s)},
      {"solver_timeout_s", fmt_double(solver_timeout_s)},
      {"memory_budget_nodes", std::to_string(memory_budget_nodes)},
      {"array_min", array_min ? "on" : "off"},
      {"step_budget", std::to_string(step_budget)},
      {"max_paths", std::to_string(max_paths)},
      {"max_frontier", std::to_string(max_frontier)},
      {"stop_on_first_error", stop_on_first_error ? "true" : "false"},
      {"solver", solver},
      {"builtin_max_bits", std::to_string(builtin_max_bits)},
      {"min_literal_threshold", std::to_string(min_literal_threshold)},
  };
}

namespace {

class EngineInternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Shallowest-trace-first frontier, FIFO among equal depths. A re-executed
// path enqueues siblings at several depths, so plain FIFO would break the
// breadth-first dequeue order.
struct Frontier {
  std::map<size_t, std::deque<std::vector<bool>>> buckets;
  size_t count = 0;
  uint64_t dropped_queue_budget = 0;
  uint64_t limit;

  explicit Frontier(uint64_t limit) : limit(limit) {}

  bool empty() const { return count == 0; }
  size_t size() const { return count; }

  void enqueue(std::vector<bool> trace) {
    if (count >= limit) {
      ++dropped_queue_budget;
      return;
    }
    buckets[trace.size()].push_back(std::move(trace));
    ++count;
  }

  std::vector<bool> dequeue() {
    auto it = buckets.begin();
    std::vector<bool> trace = std::move(it->second.front());
    it->second.pop_front();
    if (it->second.empty()) buckets.erase(it);
    --count;
    return trace;
  }
};

// One path execution; implements the surface test bodies program against.
class PathRunner final : public ExecutionContext {
public:
  PathRunner(std::vector<bool> trace, Solver& solver, const ExploreConfig& cfg,
             Frontier& frontier, Clock::time_point t0,
             std::vector<ErrorRecord>& errors)
      : trace_(std::move(trace)), solver_(solver), cfg_(cfg), frontier_(frontier),
        t0_(t0), errors_(errors), stats_at_start_(solver.stats()) {}

  Term make_symbol(const std::string& name, unsigned width) override {
    return symtab_.fresh(name, width);
  }

  bool branch(const Term& cond) override {
    if (!cond.valid() || cond.width() != 1)
      throw ContextError("branch: condition must have width 1");
    // Branch-count budget catches loops that never suspend and so stay
    // invisible to the kernel's activation budget.
    if (++branch_ops_ > cfg_.step_budget * 8)
      throw PathStop{PathStatus::Partial, PartialReason::StepBudget};
    check_budgets();
    if (cond.is_const()) return cond.const_value() != 0;

    if (pos_ < trace_.size()) {
      bool side = trace_[pos_++];
      decisions_.push_back(side);
      pc_.append(side ? cond : not_(cond));
      return side;
    }

    Verdict vt = feasible(cond);
    Verdict vf = feasible(not_(cond));
    if (vt == Verdict::Sat && vf == Verdict::Sat) {
      std::vector<bool> sibling = decisions_;
      sibling.push_back(false);
      frontier_.enqueue(std::move(sibling));
      take(true, cond);
      return true;
    }
    if (vt == Verdict::Sat) {
      take(true, cond);
      return true;
    }
    if (vf == Verdict::Sat) {
      take(false, not_(cond));
      return false;
    }
    throw EngineInternalError("branch: both sides infeasible on a live path");
  }

  void assume(const Term& cond) override {
    if (!cond.valid() || cond.width() != 1)
      throw ContextError("assume: condition must have width 1");
    if (cond.is_const()) {
      if (cond.const_value() == 0) throw PathStop{PathStatus::Pruned};
      return;
    }
    pc_.append(cond);
    QueryResult r = solver_.check_sat(pc_, {});
    if (r.verdict == Verdict::Unsat) throw PathStop{PathStatus::Pruned};
    // Unknown keeps exploring: an infeasible path may be walked but never
    // produces a witness, so soundness is not at risk.
  }

  void check_assert(const Term& cond, const std::string& site) override {
    if (!cond.valid() || cond.width() != 1)
      throw ContextError("assert: condition must have width 1");
    if (cond.is_const()) {
      if (cond.const_value() != 0) return;
      record_error(ErrorKind::AssertionFailure, site, model_of_pc());
      throw PathStop{PathStatus::Errored};
    }

    QueryResult bad = solver_.check_sat(pc_, {not_(cond)}, true);
    if (bad.verdict == Verdict::Unknown) stop_solver_timeout();
    if (bad.verdict == Verdict::Unsat) return; // tautology under pc

    record_error(ErrorKind::AssertionFailure, site, *bad.model);
    QueryResult good = solver_.check_sat(pc_, {cond});
    if (good.verdict == Verdict::Unknown) stop_solver_timeout();
    if (good.verdict == Verdict::Unsat) throw PathStop{PathStatus::Errored};
    pc_.append(cond);
  }

  Term checked_div(const Term& a, const Term& b, const std::string& site) override {
    guard(eq(b, mk_const(b.width(), 0)), ne(b, mk_const(b.width(), 0)),
          ErrorKind::DivideByZero, site);
    return udiv(a, b);
  }

  Term checked_rem(const Term& a, const Term& b, const std::string& site) override {
    guard(eq(b, mk_const(b.width(), 0)), ne(b, mk_const(b.width(), 0)),
          ErrorKind::DivideByZero, site);
    return urem(a, b);
  }

  Term checked_shift(OpTag tag, const Term& a, const Term& amount,
                     const std::string& site) override {
    if (op_class(tag) != OpClass::Shift)
      throw ContextError("checked_shift: not a shift tag");
    Term w = mk_const(amount.width(), a.width());
    guard(ule(w, amount), ult(amount, w), ErrorKind::Overshift, site);
    return apply(tag, {a, amount});
  }

  void checked_bound(const Term& index, uint64_t size,
                     const std::string& site) override {
    const unsigned w = index.width();
    if (w < 64 && size >= (uint64_t{1} << w)) return; // width cannot overflow
    Term sz = mk_const(w, size);
    guard(ule(sz, index), ult(index, sz), ErrorKind::OutOfBounds, site);
  }

  Term array_read(const SymArray& arr, const Term& index) override {
    if (!cfg_.array_min) return read_raw(arr, index);
    MinimiseConfig mcfg;
    mcfg.literal_threshold = cfg_.min_literal_threshold;
    return read_min(arr, index, pc_, solver_, mcfg);
  }

  void observe(const std::string& name, const Term& value) override {
    observables_[name] = value;
  }

  void unreachable(const std::string& site) override {
    record_error(ErrorKind::Unreachable, site, model_of_pc());
    throw PathStop{PathStatus::Errored};
  }

  // -- Runner bookkeeping ---------------------------------------------

  PathSummary finish(PathStatus status, PartialReason reason) {
    PathSummary s;
    s.trace = decisions_;
    s.status = status;
    s.partial_reason = reason;
    s.error = terminal_error_;
    s.pc = pc_;
    s.observables = observables_;
    s.symbols = symtab_.symbols();
    s.queries = solver_.stats().query_count - stats_at_start_.query_count;
    s.solver_time_s =
        solver_.stats().total_solver_time_s - stats_at_start_.total_solver_time_s;
    return s;
  }

private:
  Verdict feasible(const Term& side) {
    QueryResult r = solver_.check_sat(pc_, {side});
    if (r.verdict == Verdict::Unknown) stop_solver_timeout();
    return r.verdict;
  }

  void take(bool side, const Term& constrained) {
    decisions_.push_back(side);
    ++pos_;
    pc_.append(constrained);
  }

  // Shared structure of the guarded operations: report the feasible bad
  // side with a witness, then continue under the guard.
  void guard(const Term& bad, const Term& good, ErrorKind kind,
             const std::string& site) {
    if (bad.is_const()) {
      if (bad.const_value() == 0) return;
      record_error(kind, site, model_of_pc());
      throw PathStop{PathStatus::Errored};
    }
    QueryResult rbad = solver_.check_sat(pc_, {bad}, true);
    if (rbad.verdict == Verdict::Unknown) stop_solver_timeout();
    if (rbad.verdict == Verdict::Unsat) return;

    record_error(kind, site, *rbad.model);
    QueryResult rgood = solver_.check_sat(pc_, {good});
    if (rgood.verdict == Verdict::Unknown) stop_solver_timeout();
    if (rgood.verdict == Verdict::Unsat) throw PathStop{PathStatus::Errored};
    pc_.append(good);
  }

  Assignment model_of_pc() {
    QueryResult r = solver_.check_sat(pc_, {}, true);
    if (r.verdict == Verdict::Unknown) stop_solver_timeout();
    if (r.verdict != Verdict::Sat)
      throw EngineInternalError("path condition of a live path is unsat");
    return *r.model;
  }

  void record_error(ErrorKind kind, const std::string& site,
                    const Assignment& model) {
    // Witness covers every declared symbol; unconstrained ones take the
    // least value. Must satisfy the path condition by substitution.
    Assignment full = model;
    for (const auto& s : symtab_.symbols())
      if (!full.count(s.id)) full[s.id] = 0;
    for (const auto& c : pc_.constraints())
      if (eval(c, full) != 1)
        throw EngineInternalError("witness does not satisfy the path condition");

    ErrorRecord rec;
    rec.kind = kind;
    rec.site = site;
    for (const auto& s : symtab_.symbols()) rec.witness[s.name] = full[s.id];
    errors_.push_back(rec);
    terminal_error_ = std::move(rec);
  }

  [[noreturn]] void stop_solver_timeout() {
    throw PathStop{PathStatus::Partial, PartialReason::SolverTimeout};
  }

  void check_budgets() {
    if (seconds_since(t0_) > cfg_.overall_timeout_s)
      throw PathStop{PathStatus::Partial, PartialReason::OverallTimeout};
    if (static_cast<uint64_t>(live_term_nodes()) > cfg_.memory_budget_nodes)
      throw PathStop{PathStatus::Partial, PartialReason::MemoryBudget};
  }

  std::vector<bool> trace_;
  std::vector<bool> decisions_;
  size_t pos_ = 0;
  uint64_t branch_ops_ = 0;
  Solver& solver_;
  const ExploreConfig& cfg_;
  Frontier& frontier_;
  Clock::time_point t0_;
  std::vector<ErrorRecord>& errors_;
  SymbolTable symtab_;
  SolverStats stats_at_start_;
  PathCondition pc_;
  std::map<std::string, Term> observables_;
  std::optional<ErrorRecord> terminal_error_;
};

std::unique_ptr<Solver> make_solver(const ExploreConfig& cfg) {
  std::unique_ptr<Solver> s;
  if (cfg.solver == "builtin")
    s = make_builtin_solver(cfg.builtin_max_bits);
  else
    s = make_external_solver(cfg.solver.substr(9));
  s->set_timeout_s(cfg.solver_timeout_s);
  return s;
}

} // namespace

Engine::Engine(ExploreConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

ExploreResult Engine::explore(const std::string& test_name, const TestBody& body) {
  ExploreResult result;
  Report& rep = result.report;
  rep.test = test_name;
  rep.config = cfg_.echo();

  std::unique_ptr<Solver> solver = make_solver(cfg_);
  Frontier frontier(cfg_.max_frontier);
  frontier.enqueue({});

  auto t0 = Clock::now();
  uint64_t dequeued = 0;
  bool stopped_early = false;

  while (!frontier.empty()) {
    if (dequeued >= cfg_.max_paths || seconds_since(t0) > cfg_.overall_timeout_s) {
      stopped_early = true;
      break;
    }
    if (cfg_.stop_on_first_error && !rep.errors.empty()) {
      stopped_early = true;
      break;
    }

    std::vector<bool> trace = frontier.dequeue();
    ++dequeued;
    result.dequeue_depths.push_back(trace.size());

    PathRunner runner(std::move(trace), *solver, cfg_, frontier, t0, rep.errors);
    PathStatus status = PathStatus::Running;
    PartialReason reason = PartialReason::OverallTimeout;
    try {
      body(runner);
      status = PathStatus::Complete;
    } catch (const PathStop& stop) {
      status = stop.status;
      reason = stop.reason;
    }

    switch (status) {
      case PathStatus::Complete:
        ++rep.paths_complete;
        break;
      case PathStatus::Partial:
        ++rep.paths_partial;
        ++rep.partial_reasons[std::string(partial_reason_name(reason))];
        break;
      case PathStatus::Pruned:
        ++rep.paths_pruned;
        break;
      case PathStatus::Errored:
        break; // the error record stands for the path
      case PathStatus::Running:
        break;
    }

    if (cfg_.collect_paths) result.paths.push_back(runner.finish(status, reason));
  }

  // Dropped enqueues were discovered but never explored.
  if (frontier.dropped_queue_budget) {
    rep.paths_partial += frontier.dropped_queue_budget;
    rep.partial_reasons[std::string(partial_reason_name(PartialReason::QueueBudget))] +=
        frontier.dropped_queue_budget;
  }

  rep.frontier_remaining = stopped_early ? frontier.size() : 0;
  rep.time_s = seconds_since(t0);
  const SolverStats& st = solver->stats();
  rep.queries = st.query_count;
  rep.array_cells = st.array_cells;
  rep.solver_time_share =
      rep.time_s > 0 ? std::min(1.0, st.total_solver_time_s / rep.time_s) : 0.0;
  return result;
}

} // namespace symx
