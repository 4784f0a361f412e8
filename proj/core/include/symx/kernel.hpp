// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symx/context.hpp"
#include "symx/term.hpp"

namespace symx {

/// Unitless simulation time in integer ticks.
using SimTime = uint64_t;
inline constexpr SimTime kTimeMax = std::numeric_limits<SimTime>::max();

class KernelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SignalId {
  uint32_t index = UINT32_MAX;
  bool valid() const { return index != UINT32_MAX; }
};
struct PortId {
  uint32_t index = UINT32_MAX;
  bool valid() const { return index != UINT32_MAX; }
};
struct EventId {
  uint32_t index = UINT32_MAX;
  bool valid() const { return index != UINT32_MAX; }
};
struct ProcessId {
  uint32_t index = UINT32_MAX;
  bool valid() const { return index != UINT32_MAX; }
};

/// Sensitivity edge filter. Pos/Neg are meaningful for width-1 signals with
/// concrete transitions (clocks); a symbolic transition wakes conservatively.
enum class Edge : uint8_t { AnyChange, Pos, Neg };

enum class RunOutcome : uint8_t { Finished, NoMoreActivity, StepBudgetExhausted };

class SimKernel;

/// Handed to thread bodies; records the resume label and suspension reason.
/// Use the SYMX_THREAD_* macros below rather than calling these directly.
class ThreadCtx {
public:
  int resume_point() const;
  void wait_time(SimTime d, int label);
  void wait_event(EventId e, int label);
  void finish();

private:
  friend class SimKernel;
  ThreadCtx(SimKernel* k, uint32_t pid) : kernel_(k), pid_(pid) {}
  SimKernel* kernel_;
  uint32_t pid_;
};

using MethodBody = std::function<void()>;
using ThreadBody = std::function<void(ThreadCtx&)>;

/// Event-driven scheduler with the evaluate-update-delta timestep structure.
/// Deterministic: runnable processes activate in ascending registration-id
/// order, signals commit in id order, and timed thread wakeups precede event
/// firings at the same tick.
class SimKernel {
public:
  explicit SimKernel(ExecutionContext& ctx, uint64_t step_budget = 100000);

  ExecutionContext& ctx() { return ctx_; }

  // -- Elaboration ------------------------------------------------------
  SignalId add_signal(std::string name, Term initial);
  PortId add_port(std::string name);
  void bind(PortId port, SignalId sig);
  EventId add_event(std::string name);
  ProcessId add_method(std::string name, MethodBody body, bool initialize = true);
  ProcessId add_thread(std::string name, ThreadBody body);
  void sensitive(ProcessId p, SignalId s, Edge edge = Edge::AnyChange);
  void sensitive(ProcessId p, EventId e);

  /// Width-1 signal toggling per the duty cycle, high first, starting at 1.
  SignalId make_clock(std::string name, SimTime period, unsigned duty_percent);

  // -- Simulation-phase operations --------------------------------------
  Term signal_read(SignalId s) const;
  void signal_write(SignalId s, const Term& value);
  Term port_read(PortId p) const;
  void port_write(PortId p, const Term& value);

  /// Schedules the event to fire at now+delay; all processes waiting at the
  /// firing instant are notified, including late waiters. Zero delay means
  /// next delta. An earlier pending notification wins over a later one.
  void notify(EventId e, SimTime delay);

  RunOutcome run(SimTime until);

  SimTime now() const { return now_; }
  uint64_t delta_count() const { return delta_count_; }
  uint64_t activations() const { return activations_; }
  void set_step_budget(uint64_t b) { step_budget_ = b; }
  uint64_t step_budget() const { return step_budget_; }

private:
  friend class ThreadCtx;

  enum class PKind : uint8_t { Method, Thread };
  enum class TState : uint8_t { Ready, WaitingTime, WaitingEvent, Done };

  struct ProcessRec {
    std::string name;
    PKind kind;
    MethodBody method;
    ThreadBody thread;
    int resume_label = 0;
    TState tstate = TState::Ready;
    SimTime wake_at = 0;
    uint32_t waiting_event = UINT32_MAX;
    std::unique_ptr<ThreadCtx> tctx;
  };

  struct SignalRec {
    std::string name;
    Term current;
    std::optional<Term> pending;
    std::vector<std::pair<uint32_t, Edge>> subscribers;
  };

  struct EventRec {
    std::string name;
    std::vector<uint32_t> waiters;
    std::optional<SimTime> pending_notify;
    bool delta_pending = false;
    std::vector<uint32_t> static_subscribers;
  };

  void activate(uint32_t pid);
  bool budget_exceeded() const { return activations_ >= step_budget_; }
  void make_runnable(uint32_t pid) { runnable_.insert(pid); }
  void wake_signal_subscribers(SignalRec& sig, const Term& old_value);

  ExecutionContext& ctx_;
  SimTime now_ = 0;
  uint64_t delta_count_ = 0;
  uint64_t activations_ = 0;
  uint64_t step_budget_;
  uint32_t running_pid_ = UINT32_MAX;
  bool elaboration_checked_ = false;

  std::vector<std::unique_ptr<ProcessRec>> processes_;
  std::vector<SignalRec> signals_;
  std::vector<EventRec> events_;
  std::vector<std::pair<std::string, SignalId>> ports_; // name, bound signal
  std::set<uint32_t> runnable_;
};

// Resumable-thread body structure: an explicit-label switch, the in-code
// counterpart of translating thread control flow to labels and jumps.
//
//   void body(ThreadCtx& tc) {
//     SYMX_THREAD_BEGIN(tc);
//     ...
//     SYMX_WAIT_TIME(tc, 5);
//     ...
//     SYMX_THREAD_END(tc);
//   }
#define SYMX_THREAD_BEGIN(tc) switch ((tc).resume_point()) { case 0:
#define SYMX_WAIT_TIME(tc, d) \
  do {                        \
    (tc).wait_time((d), __LINE__); \
    return;                   \
    case __LINE__:;           \
  } while (0)
#define SYMX_WAIT_EVENT(tc, e) \
  do {                         \
    (tc).wait_event((e), __LINE__); \
    return;                    \
    case __LINE__:;            \
  } while (0)
#define SYMX_THREAD_END(tc) \
  (tc).finish();            \
  }

} // namespace symx
