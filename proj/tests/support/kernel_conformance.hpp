// Copyright (c) 2026 symx contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// Ten-case scheduler conformance micro-suite. Every expected sequence below
// is a hand-computed trace of the evaluate-update-delta semantics; the
// acceptance suite requires exact matches.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "symx/context.hpp"
#include "symx/kernel.hpp"

namespace kernel_conformance {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string join(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " | " : "") << v[i];
  return os.str();
}

inline CaseResult compare(const std::string& name,
                          const std::vector<std::string>& expected,
                          const std::vector<std::string>& got) {
  CaseResult r;
  r.name = name;
  r.pass = expected == got;
  if (!r.pass) r.detail = "expected [" + join(expected) + "] got [" + join(got) + "]";
  return r;
}

inline symx::Term byte(uint64_t v) { return symx::mk_const(8, v); }

} // namespace detail

// 1. A write and a read of the same signal in one delta: the reader sees the
//    old value; the committed value arrives one delta later.
inline CaseResult case_read_old_in_same_delta() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId s = k.add_signal("s", detail::byte(0));
  std::vector<std::string> log;

  k.add_method("writer", [&] { k.signal_write(s, detail::byte(5)); });
  ProcessId reader = k.add_method("reader", [&] {
    log.push_back("read=" + std::to_string(k.signal_read(s).const_value()));
  });
  k.sensitive(reader, s);

  RunOutcome out = k.run(10);
  std::vector<std::string> expected = {"read=0", "read=5"};
  CaseResult r = detail::compare("read-old-value-in-same-delta", expected, log);
  r.pass = r.pass && out == RunOutcome::NoMoreActivity;
  return r;
}

// 2. Two writes to one signal in the same evaluate phase: the later
//    registration id wins the commit.
inline CaseResult case_last_write_wins() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId s = k.add_signal("s", detail::byte(0));
  std::vector<std::string> log;

  k.add_method("w1", [&] { k.signal_write(s, detail::byte(1)); });
  k.add_method("w2", [&] { k.signal_write(s, detail::byte(2)); });
  ProcessId reader = k.add_method("reader", [&] {
    log.push_back("read=" + std::to_string(k.signal_read(s).const_value()));
  });
  k.sensitive(reader, s);

  k.run(10);
  return detail::compare("last-write-wins", {"read=0", "read=2"}, log);
}

// 3. Writing the current value requests no update and wakes nobody.
inline CaseResult case_equal_write_no_update() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId s = k.add_signal("s", detail::byte(0));
  std::vector<std::string> log;

  k.add_method("w", [&] { k.signal_write(s, detail::byte(0)); });
  ProcessId reader = k.add_method("reader", [&] {
    log.push_back("read=" + std::to_string(k.signal_read(s).const_value()));
  });
  k.sensitive(reader, s);

  k.run(10);
  return detail::compare("equal-write-no-update", {"read=0"}, log);
}

// 4. The late-waiter regression: a thread that starts waiting after
//    notify(5) was scheduled, but before tick 5, is still notified at 5.
inline CaseResult case_late_timed_waiter() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  EventId e = k.add_event("e");
  std::vector<std::string> log;

  k.add_thread("notifier", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    k.notify(e, 5);
    SYMX_THREAD_END(tc);
  });
  k.add_thread("late", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    SYMX_WAIT_TIME(tc, 2);
    SYMX_WAIT_EVENT(tc, e);
    log.push_back("late-woke@" + std::to_string(k.now()));
    SYMX_THREAD_END(tc);
  });

  k.run(10);
  return detail::compare("late-waiter-timed-notify", {"late-woke@5"}, log);
}

// 5. One event collects multiple waiters; notify(0) wakes both next delta,
//    in registration order.
inline CaseResult case_multi_waiter_delta_notify() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  EventId e = k.add_event("e");
  std::vector<std::string> log;

  for (int i = 1; i <= 2; ++i) {
    k.add_thread("t" + std::to_string(i), [&, i](ThreadCtx& tc) {
      SYMX_THREAD_BEGIN(tc);
      SYMX_WAIT_EVENT(tc, e);
      log.push_back("t" + std::to_string(i) + "@" + std::to_string(k.now()));
      SYMX_THREAD_END(tc);
    });
  }
  k.add_method("notifier", [&] { k.notify(e, 0); });

  k.run(10);
  return detail::compare("multi-waiter-delta-notify", {"t1@0", "t2@0"}, log);
}

// 6. A method sensitive to the clock posedge runs once per period: period 2,
//    duty 50 over until=20 gives exactly 10 activations, at even ticks.
inline CaseResult case_clock_activations() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId clk = k.make_clock("clk", 2, 50);
  std::vector<std::string> log;

  ProcessId cnt = k.add_method(
      "cnt", [&] { log.push_back(std::to_string(k.now())); }, false);
  k.sensitive(cnt, clk, Edge::Pos);

  RunOutcome out = k.run(20);
  std::vector<std::string> expected;
  for (int t = 2; t <= 20; t += 2) expected.push_back(std::to_string(t));
  CaseResult r = detail::compare("clock-posedge-once-per-period", expected, log);
  r.pass = r.pass && out == RunOutcome::Finished;
  return r;
}

// 7. wait(5) at now=10 resumes at now=15.
inline CaseResult case_wait_time_arithmetic() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  std::vector<std::string> log;

  k.add_thread("t", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    SYMX_WAIT_TIME(tc, 10);
    log.push_back("at=" + std::to_string(k.now()));
    SYMX_WAIT_TIME(tc, 5);
    log.push_back("at=" + std::to_string(k.now()));
    SYMX_THREAD_END(tc);
  });

  k.run(100);
  return detail::compare("wait-time-arithmetic", {"at=10", "at=15"}, log);
}

// 8. Delta cascade m1 -> s1 -> m2 -> s2 -> m3 counts two delta turnovers
//    within the timestep; the counter resets when time advances.
inline CaseResult case_delta_cascade_and_reset() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId s1 = k.add_signal("s1", detail::byte(0));
  SignalId s2 = k.add_signal("s2", detail::byte(0));
  std::vector<std::string> log;

  k.add_method("m1", [&] { k.signal_write(s1, detail::byte(1)); });
  ProcessId m2 = k.add_method(
      "m2", [&] { k.signal_write(s2, detail::byte(1)); }, false);
  k.sensitive(m2, s1);
  ProcessId m3 = k.add_method(
      "m3", [&] { log.push_back("delta=" + std::to_string(k.delta_count())); },
      false);
  k.sensitive(m3, s2);
  k.add_thread("later", [&](ThreadCtx& tc) {
    SYMX_THREAD_BEGIN(tc);
    SYMX_WAIT_TIME(tc, 3);
    log.push_back("t3delta=" + std::to_string(k.delta_count()));
    SYMX_THREAD_END(tc);
  });

  k.run(10);
  return detail::compare("delta-cascade-and-reset", {"delta=2", "t3delta=0"}, log);
}

// 9. A notification with no waiters fires without effect.
inline CaseResult case_notify_no_waiters() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  EventId e = k.add_event("e");
  std::vector<std::string> log;

  k.add_method("n", [&] { k.notify(e, 2); });

  RunOutcome out = k.run(10);
  CaseResult r;
  r.name = "notify-no-waiters";
  r.pass = out == RunOutcome::NoMoreActivity && k.now() == 2 && log.empty();
  if (!r.pass)
    r.detail = "now=" + std::to_string(k.now());
  return r;
}

// 10. Reads return the current value even while an update is pending in the
//     same delta.
inline CaseResult case_read_current_not_pending() {
  using namespace symx;
  ConcreteContext ctx({});
  SimKernel k(ctx);
  SignalId s = k.add_signal("s", detail::byte(5));
  std::vector<std::string> log;

  k.add_method("w", [&] {
    k.signal_write(s, detail::byte(9));
    log.push_back("in-delta=" + std::to_string(k.signal_read(s).const_value()));
  });
  ProcessId reader = k.add_method("r", [&] {
    log.push_back("after=" + std::to_string(k.signal_read(s).const_value()));
  });
  k.sensitive(reader, s);

  k.run(10);
  return detail::compare("read-current-not-pending",
                         {"in-delta=5", "after=5", "after=9"}, log);
}

inline std::vector<CaseResult> run_all() {
  return {
      case_read_old_in_same_delta(),
      case_last_write_wins(),
      case_equal_write_no_update(),
      case_late_timed_waiter(),
      case_multi_waiter_delta_notify(),
      case_clock_activations(),
      case_wait_time_arithmetic(),
      case_delta_cascade_and_reset(),
      case_notify_no_waiters(),
      case_read_current_not_pending(),
  };
}

} // namespace kernel_conformance
