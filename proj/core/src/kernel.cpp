// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symx/kernel.hpp"

#include <algorithm>

namespace symx {

SimKernel::SimKernel(ExecutionContext& ctx, uint64_t step_budget)
    : ctx_(ctx), step_budget_(step_budget) {}

SignalId SimKernel::add_signal(std::string name, Term initial) {
  if (!initial.valid()) throw KernelError("add_signal: null initial value");
  SignalRec rec;
  rec.name = std::move(name);
  rec.current = std::move(initial);
  signals_.push_back(std::move(rec));
  return SignalId{static_cast<uint32_t>(signals_.size() - 1)};
}

PortId SimKernel::add_port(std::string name) {
  ports_.emplace_back(std::move(name), SignalId{});
  return PortId{static_cast<uint32_t>(ports_.size() - 1)};
}

void SimKernel::bind(PortId port, SignalId sig) {
  if (!port.valid() || port.index >= ports_.size())
    throw KernelError("bind: bad port");
  if (!sig.valid() || sig.index >= signals_.size())
    throw KernelError("bind: bad signal");
  ports_[port.index].second = sig;
}

EventId SimKernel::add_event(std::string name) {
  EventRec rec;
  rec.name = std::move(name);
  events_.push_back(std::move(rec));
  return EventId{static_cast<uint32_t>(events_.size() - 1)};
}

ProcessId SimKernel::add_method(std::string name, MethodBody body, bool initialize) {
  auto rec = std::make_unique<ProcessRec>();
  rec->name = std::move(name);
  rec->kind = PKind::Method;
  rec->method = std::move(body);
  processes_.push_back(std::move(rec));
  uint32_t pid = static_cast<uint32_t>(processes_.size() - 1);
  if (initialize) make_runnable(pid);
  return ProcessId{pid};
}

ProcessId SimKernel::add_thread(std::string name, ThreadBody body) {
  auto rec = std::make_unique<ProcessRec>();
  rec->name = std::move(name);
  rec->kind = PKind::Thread;
  rec->thread = std::move(body);
  processes_.push_back(std::move(rec));
  uint32_t pid = static_cast<uint32_t>(processes_.size() - 1);
  processes_.back()->tctx.reset(new ThreadCtx(this, pid));
  make_runnable(pid);
  return ProcessId{pid};
}

void SimKernel::sensitive(ProcessId p, SignalId s, Edge edge) {
  if (!p.valid() || p.index >= processes_.size())
    throw KernelError("sensitive: bad process");
  if (!s.valid() || s.index >= signals_.size())
    throw KernelError("sensitive: bad signal");
  signals_[s.index].subscribers.emplace_back(p.index, edge);
}

void SimKernel::sensitive(ProcessId p, EventId e) {
  if (!p.valid() || p.index >= processes_.size())
    throw KernelError("sensitive: bad process");
  if (!e.valid() || e.index >= events_.size())
    throw KernelError("sensitive: bad event");
  events_[e.index].static_subscribers.push_back(p.index);
}

SignalId SimKernel::make_clock(std::string name, SimTime period,
                               unsigned duty_percent) {
  if (period < 2) throw KernelError("make_clock: period must be >= 2 ticks");
  if (duty_percent == 0 || duty_percent >= 100)
    throw KernelError("make_clock: duty must be in (0, 100)");
  SimTime high = period * duty_percent / 100;
  if (high == 0 || high >= period)
    throw KernelError("make_clock: duty cycle has a zero-length phase");
  SimTime low = period - high;

  SignalId sig = add_signal(name, mk_const(1, 1));
  add_thread(name + ".gen", [this, sig, high, low](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    for (;;) {
      SYMX_WAIT_TIME(tc, high);
      signal_write(sig, mk_const(1, 0));
      SYMX_WAIT_TIME(tc, low);
      signal_write(sig, mk_const(1, 1));
    }
    SYMX_THREAD_END(tc);
  });
  return sig;
}

Term SimKernel::signal_read(SignalId s) const {
  if (!s.valid() || s.index >= signals_.size())
    throw KernelError("signal_read: bad signal");
  // Always the current value, never the pending one.
  return signals_[s.index].current;
}

void SimKernel::signal_write(SignalId s, const Term& value) {
  if (!s.valid() || s.index >= signals_.size())
    throw KernelError("signal_write: bad signal");
  SignalRec& rec = signals_[s.index];
  if (!value.valid() || value.width() != rec.current.width())
    throw KernelError("signal_write: width mismatch on '" + rec.name + "'");

  // The differ check goes through the engine, so a symbolic write forks.
  // Comparison is against the value the signal will hold next, keeping
  // last-write-wins within one evaluate phase.
  const Term& eff = rec.pending ? *rec.pending : rec.current;
  if (ctx_.branch(ne(eff, value)))
    rec.pending = value;
}

Term SimKernel::port_read(PortId p) const {
  if (!p.valid() || p.index >= ports_.size()) throw KernelError("port_read: bad port");
  SignalId s = ports_[p.index].second;
  if (!s.valid())
    throw KernelError("port_read: port '" + ports_[p.index].first + "' unbound");
  return signal_read(s);
}

void SimKernel::port_write(PortId p, const Term& value) {
  if (!p.valid() || p.index >= ports_.size()) throw KernelError("port_write: bad port");
  SignalId s = ports_[p.index].second;
  if (!s.valid())
    throw KernelError("port_write: port '" + ports_[p.index].first + "' unbound");
  signal_write(s, value);
}

void SimKernel::notify(EventId e, SimTime delay) {
  if (!e.valid() || e.index >= events_.size()) throw KernelError("notify: bad event");
  EventRec& rec = events_[e.index];
  if (delay == 0) {
    rec.delta_pending = true;
    return;
  }
  SimTime at = now_ + delay;
  if (!rec.pending_notify || at < *rec.pending_notify) rec.pending_notify = at;
}

int ThreadCtx::resume_point() const {
  return kernel_->processes_[pid_]->resume_label;
}

void ThreadCtx::wait_time(SimTime d, int label) {
  if (kernel_->running_pid_ != pid_)
    throw KernelError("wait(time) called outside its own thread");
  if (d == 0) throw KernelError("wait(time): zero delay not supported");
  SimKernel::ProcessRec& rec = *kernel_->processes_[pid_];
  rec.resume_label = label;
  rec.tstate = SimKernel::TState::WaitingTime;
  rec.wake_at = kernel_->now_ + d;
}

void ThreadCtx::wait_event(EventId e, int label) {
  if (kernel_->running_pid_ != pid_)
    throw KernelError("wait(event) called outside its own thread");
  if (!e.valid() || e.index >= kernel_->events_.size())
    throw KernelError("wait(event): bad event");
  SimKernel::ProcessRec& rec = *kernel_->processes_[pid_];
  rec.resume_label = label;
  rec.tstate = SimKernel::TState::WaitingEvent;
  rec.waiting_event = e.index;
  kernel_->events_[e.index].waiters.push_back(pid_);
}

void ThreadCtx::finish() {
  kernel_->processes_[pid_]->tstate = SimKernel::TState::Done;
}

void SimKernel::activate(uint32_t pid) {
  ProcessRec& rec = *processes_[pid];
  ++activations_;
  running_pid_ = pid;
  if (rec.kind == PKind::Method) {
    rec.method();
  } else {
    if (rec.tstate == TState::Done) {
      running_pid_ = UINT32_MAX;
      return;
    }
    rec.tstate = TState::Ready;
    rec.thread(*rec.tctx);
    // A body that returned without suspending fell off its end.
    if (rec.tstate == TState::Ready) rec.tstate = TState::Done;
  }
  running_pid_ = UINT32_MAX;
}

void SimKernel::wake_signal_subscribers(SignalRec& sig, const Term& old_value) {
  for (const auto& [pid, edge] : sig.subscribers) {
    bool wake = true;
    if (edge != Edge::AnyChange) {
      // Edge filters decide on concrete width-1 transitions; a symbolic
      // transition wakes conservatively.
      if (old_value.is_const() && sig.current.is_const()) {
        bool rising = old_value.const_value() == 0 && sig.current.const_value() == 1;
        bool falling = old_value.const_value() == 1 && sig.current.const_value() == 0;
        wake = (edge == Edge::Pos) ? rising : falling;
      }
    }
    if (!wake) continue;
    ProcessRec& p = *processes_[pid];
    if (p.kind == PKind::Thread &&
        (p.tstate == TState::Done || p.tstate == TState::WaitingTime ||
         p.tstate == TState::WaitingEvent))
      continue; // statically sensitive threads resume only via their wait
    make_runnable(pid);
  }
}

RunOutcome SimKernel::run(SimTime until) {
  if (!elaboration_checked_) {
    for (const auto& [name, sig] : ports_)
      if (!sig.valid())
        throw KernelError("elaboration: port '" + name + "' is unbound");
    elaboration_checked_ = true;
  }

  for (;;) {
    // Delta loop for the current timestep.
    while (!runnable_.empty()) {
      if (budget_exceeded()) return RunOutcome::StepBudgetExhausted;

      // Evaluate phase: the runnable set is fixed for this delta.
      std::vector<uint32_t> batch(runnable_.begin(), runnable_.end());
      runnable_.clear();
      for (uint32_t pid : batch) {
        if (budget_exceeded()) return RunOutcome::StepBudgetExhausted;
        activate(pid);
      }

      // Update phase: commit pending signal values in id order.
      for (auto& sig : signals_) {
        if (!sig.pending) continue;
        Term old = sig.current;
        sig.current = *sig.pending;
        sig.pending.reset();
        wake_signal_subscribers(sig, old);
      }

      // Delta-notification phase: zero-delay notifications fire now.
      for (auto& ev : events_) {
        if (!ev.delta_pending) continue;
        ev.delta_pending = false;
        for (uint32_t pid : ev.waiters) make_runnable(pid);
        ev.waiters.clear();
        for (uint32_t pid : ev.static_subscribers) {
          ProcessRec& p = *processes_[pid];
          if (p.kind == PKind::Method) make_runnable(pid);
        }
      }

      if (!runnable_.empty()) ++delta_count_;
    }

    // Advance time to the next scheduled action.
    SimTime next = kTimeMax;
    for (const auto& p : processes_)
      if (p->kind == PKind::Thread && p->tstate == TState::WaitingTime)
        next = std::min(next, p->wake_at);
    for (const auto& ev : events_)
      if (ev.pending_notify) next = std::min(next, *ev.pending_notify);

    if (next == kTimeMax) return RunOutcome::NoMoreActivity;
    if (next > until) {
      now_ = until;
      return RunOutcome::Finished;
    }

    now_ = next;
    delta_count_ = 0;

    // Timed thread wakeups precede event firings at the same tick.
    for (size_t pid = 0; pid < processes_.size(); ++pid) {
      ProcessRec& p = *processes_[pid];
      if (p.kind == PKind::Thread && p.tstate == TState::WaitingTime &&
          p.wake_at == now_)
        make_runnable(static_cast<uint32_t>(pid));
    }
    for (auto& ev : events_) {
      if (!ev.pending_notify || *ev.pending_notify != now_) continue;
      ev.pending_notify.reset();
      for (uint32_t pid : ev.waiters) make_runnable(pid);
      ev.waiters.clear();
      for (uint32_t pid : ev.static_subscribers) {
        ProcessRec& p = *processes_[pid];
        if (p.kind == PKind::Method) make_runnable(pid);
      }
    }
  }
}

} // namespace symx
