// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "plclink/plant/plc.hpp"
#include "plclink/plant/scenario.hpp"
#include "plclink/plant/trace.hpp"

using namespace plclink;
using namespace plclink::plant;

namespace {

SimTime at(int64_t us) { return SimTime(us); }

void scans(Plc1Program& p, int n) {
  for (int i = 0; i < n; ++i) p.scan(at(i));
}
void scans(Plc2Program& p, int n) {
  for (int i = 0; i < n; ++i) p.scan(at(i));
}

TraceEvent ev(uint64_t seq, const char* actor, const char* kind) {
  TraceEvent e;
  e.cycle = 1;
  e.seq = seq;
  e.actor = actor;
  e.kind = kind;
  return e;
}

// The event skeleton of one clean handshake cycle.
std::vector<TraceEvent> good_cycle() {
  return {
      ev(0, "plc1", "flag-set"),  ev(1, "gw1", "change"),   ev(2, "gw1", "publish"),
      ev(3, "gw2", "receive"),    ev(4, "plc2", "start"),   ev(5, "plc2", "flag-m9"),
      ev(6, "gw2", "change"),     ev(7, "gw2", "publish"),  ev(8, "plc2", "flag-m11"),
      ev(9, "gw2", "change"),     ev(10, "gw2", "publish"), ev(11, "gw1", "receive"),
      ev(12, "plc1", "restart"),
  };
}

}  // namespace

TEST(Plc1, RaisesFlagWhenAllMotorsDone) {
  modbus::DataStore store;
  EventCollector trace;
  Plc1Program plc(store, default_motor_ticks(), &trace);

  // Longest of motors 1-5 runs 12 ticks; one extra scan starts them.
  scans(plc, 12);
  EXPECT_EQ(store.reg(0), 0);
  scans(plc, 1);
  EXPECT_EQ(store.reg(0), 1);
  ASSERT_EQ(trace.events().size(), 1u);
  EXPECT_EQ(trace.events()[0].kind, "flag-set");
  EXPECT_EQ(plc.cycles_completed(), 0u);
}

TEST(Plc1, RestartsOnlyAfterBothAcknowledgements) {
  modbus::DataStore store;
  Plc1Program plc(store, default_motor_ticks());
  scans(plc, 13);
  ASSERT_EQ(store.reg(0), 1);

  store.set_coil(0, true);
  scans(plc, 3);
  EXPECT_EQ(plc.cycles_completed(), 0u);  // one acknowledgement is not enough

  store.set_coil(1, true);
  scans(plc, 1);
  EXPECT_EQ(plc.cycles_completed(), 1u);
  EXPECT_EQ(store.reg(0), 0);
}

TEST(Plc1, AcknowledgementEdgesAreLatched) {
  modbus::DataStore store;
  Plc1Program plc(store, default_motor_ticks());
  scans(plc, 13);

  // Coil 0 pulses high and drops before coil 1 ever rises.
  store.set_coil(0, true);
  scans(plc, 1);
  store.set_coil(0, false);
  scans(plc, 4);
  EXPECT_EQ(plc.cycles_completed(), 0u);

  store.set_coil(1, true);
  scans(plc, 1);
  EXPECT_EQ(plc.cycles_completed(), 1u);
}

TEST(Plc1, HoldsFlagLowUntilAcksDrop) {
  modbus::DataStore store;
  Plc1Program plc(store, default_motor_ticks());
  scans(plc, 13);
  store.set_coil(0, true);
  store.set_coil(1, true);
  scans(plc, 1);
  ASSERT_EQ(plc.cycles_completed(), 1u);

  // While the acknowledgements stay high the flag must stay low, however
  // long that takes -- a polling bridge may be slow to notice the drop.
  scans(plc, 40);
  EXPECT_EQ(store.reg(0), 0);

  store.set_coil(0, false);
  store.set_coil(1, false);
  scans(plc, 1 + 13);
  EXPECT_EQ(store.reg(0), 1);
}

TEST(Plc1, StaleHighCoilsCannotAcknowledge) {
  modbus::DataStore store;
  Plc1Program plc(store, default_motor_ticks());
  // Both coils are already high when the flag is raised.
  store.set_coil(0, true);
  store.set_coil(1, true);
  scans(plc, 13);
  ASSERT_EQ(store.reg(0), 1);

  scans(plc, 5);
  EXPECT_EQ(plc.cycles_completed(), 0u);  // no edges, no restart

  // Only a fresh low -> high transition counts.
  store.set_coil(0, false);
  store.set_coil(1, false);
  scans(plc, 1);
  store.set_coil(0, true);
  store.set_coil(1, true);
  scans(plc, 1);
  EXPECT_EQ(plc.cycles_completed(), 1u);
}

TEST(Plc2, IdleUntilRisingEdge) {
  modbus::DataStore store;
  Plc2Program plc(store, default_motor_ticks());
  scans(plc, 5);
  EXPECT_EQ(plc.starts(), 0u);

  store.set_coil(0, true);
  scans(plc, 1);
  EXPECT_EQ(plc.starts(), 1u);
}

TEST(Plc2, HighCoilAtPowerOnStartsImmediately) {
  // Edge memory powers on low, so an already-high coil reads as a rise on the
  // very first scan. Harmless in practice: gateways only raise the coil after
  // the peer's flag is published.
  modbus::DataStore store;
  store.set_coil(0, true);
  Plc2Program plc(store, default_motor_ticks());
  scans(plc, 1);
  EXPECT_EQ(plc.starts(), 1u);
}

TEST(Plc2, FlagsRaisedAtMotorNineAndEleven) {
  modbus::DataStore store;
  EventCollector trace;
  Plc2Program plc(store, default_motor_ticks(), &trace);
  store.set_coil(0, true);
  scans(plc, 1);  // edge
  scans(plc, 1);  // motors start

  scans(plc, 13);  // 13 ticks: motor 9 (14 ticks) still running
  EXPECT_EQ(store.reg(0), 0);
  scans(plc, 1);  // tick 14 completes motor 9
  EXPECT_EQ(store.reg(0), 1);
  EXPECT_EQ(store.reg(1), 0);

  scans(plc, 4);  // tick 18 completes motor 11
  EXPECT_EQ(store.reg(1), 1);

  std::vector<std::string> kinds;
  for (const auto& e : trace.events()) kinds.push_back(e.kind);
  EXPECT_EQ(kinds, (std::vector<std::string>{"start", "flag-m9", "flag-m11"}));
}

TEST(Plc2, ReArmsOnLowLevelNotEdge) {
  modbus::DataStore store;
  Plc2Program plc(store, default_motor_ticks());
  store.set_coil(0, true);
  scans(plc, 2);
  // The peer's flag falls while motors are still running.
  store.set_coil(0, false);
  scans(plc, 18);  // run to completion; WaitReset sees the low level
  scans(plc, 1);
  EXPECT_EQ(store.reg(0), 0);
  EXPECT_EQ(store.reg(1), 0);

  // Next rising edge starts the second sequence.
  store.set_coil(0, true);
  scans(plc, 1);
  EXPECT_EQ(plc.starts(), 2u);
}

TEST(Plc2, HoldsResetWhileCoilStaysHigh) {
  modbus::DataStore store;
  Plc2Program plc(store, default_motor_ticks());
  store.set_coil(0, true);
  scans(plc, 2 + 18);  // edge + start + full run
  ASSERT_EQ(store.reg(1), 1);

  scans(plc, 10);
  EXPECT_EQ(store.reg(0), 1);  // flags hold while coil 0 is high
  store.set_coil(0, false);
  scans(plc, 1);
  EXPECT_EQ(store.reg(0), 0);
  EXPECT_EQ(store.reg(1), 0);
}

TEST(CheckEventOrder, CleanCycleHasNoViolations) {
  EXPECT_TRUE(check_event_order(good_cycle()).empty());
}

TEST(CheckEventOrder, StartBeforeFlagIsViolation) {
  auto events = good_cycle();
  // Move the plc2 start ahead of the plc1 flag-set.
  events[4].seq = 0;
  events[0].seq = 4;
  auto violations = check_event_order(events);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("plc2 start[0]"), std::string::npos);
}

TEST(CheckEventOrder, RestartBeforeM11IsViolation) {
  auto events = good_cycle();
  events[12].seq = 7;  // restart between flag-m9 and flag-m11
  events[8].seq = 12;
  auto violations = check_event_order(events);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("plc1 restart[0]"), std::string::npos);
  EXPECT_NE(violations[0].find("flag-m11"), std::string::npos);
}

TEST(CheckEventOrder, StartWithoutFlagIsViolation) {
  std::vector<TraceEvent> events{ev(0, "plc2", "start")};
  auto violations = check_event_order(events);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("without a plc1 flag-set"), std::string::npos);
}

TEST(CheckEventOrder, DoublePublishIsViolation) {
  auto events = good_cycle();
  events.push_back(ev(13, "gw1", "publish"));
  auto violations = check_event_order(events);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("gw1 publish at seq 13 without a preceding change"),
            std::string::npos);
}

TEST(CheckEventOrder, UnpublishedChangeIsViolation) {
  auto events = good_cycle();
  events.push_back(ev(13, "gw1", "change"));
  events.push_back(ev(14, "gw1", "change"));
  auto violations = check_event_order(events);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("never published"), std::string::npos);
}

TEST(CheckEventOrder, GatewaysTrackedIndependently) {
  std::vector<TraceEvent> events{
      ev(0, "gw1", "change"),
      ev(1, "gw2", "change"),
      ev(2, "gw1", "publish"),
      ev(3, "gw2", "publish"),
  };
  EXPECT_TRUE(check_event_order(events).empty());
}

TEST(FormatEvent, ColumnsAndDetail) {
  TraceEvent e;
  e.cycle = 2;
  e.seq = 17;
  e.ts = std::chrono::milliseconds(1234);
  e.actor = "plc1";
  e.kind = "flag-set";
  e.detail = "reg0=1";
  EXPECT_EQ(format_event(e), "  2     17   1234.000 plc1 flag-set reg0=1");
}

TEST(ScenarioConfigParse, OverridesAndValidation) {
  auto r = parse_scenario_config(R"({
    "cycles": 7, "tick_ms": 2, "poll_period_ms": 20, "keepalive_s": 9,
    "corrupt_percent": 1.5, "seed": 42, "quiescence_ms": 800,
    "motor_ticks": {"9": 5, "11": 6}
  })");
  ASSERT_TRUE(r.ok()) << r.error();
  const auto& cfg = r.value();
  EXPECT_EQ(cfg.cycles, 7u);
  EXPECT_EQ(cfg.tick, std::chrono::milliseconds(2));
  EXPECT_EQ(cfg.poll_period, std::chrono::milliseconds(20));
  EXPECT_EQ(cfg.keepalive, 9);
  EXPECT_DOUBLE_EQ(cfg.corrupt_percent, 1.5);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.motor_ticks.at(9), 5u);
  EXPECT_EQ(cfg.motor_ticks.at(11), 6u);
  EXPECT_EQ(cfg.motor_ticks.at(1), 8u);  // defaults survive partial override

  EXPECT_FALSE(parse_scenario_config(R"({"cycles": 0})").ok());
  EXPECT_FALSE(parse_scenario_config("oops").ok());
}

TEST(Scenario, SingleCycleCompletesCleanly) {
  ScenarioConfig cfg;
  cfg.cycles = 1;
  auto report = run_scenario(cfg);
  EXPECT_EQ(report.cycles_completed, 1u);
  EXPECT_FALSE(report.deadlock);
  EXPECT_TRUE(check_trace(report).empty());
  EXPECT_LT(report.end_time, std::chrono::seconds(2));
  EXPECT_FALSE(report.events.empty());
  EXPECT_FALSE(report.wire.empty());
  // Each side publishes at least its initial snapshot plus one change.
  EXPECT_GE(report.gw1.publishes, 2u);
  EXPECT_GE(report.gw2.publishes, 2u);
  EXPECT_EQ(report.gw1.writes_lost + report.gw2.writes_lost, 0u);
  EXPECT_EQ(report.broker.wildcard_rejected, 0u);
  EXPECT_EQ(report.broker.retained_ignored, 0u);
}

TEST(Scenario, EventNarrativePerCycle) {
  ScenarioConfig cfg;
  cfg.cycles = 2;
  auto report = run_scenario(cfg);
  ASSERT_EQ(report.cycles_completed, 2u);
  ASSERT_TRUE(check_trace(report).empty());

  // Within every cycle the handshake landmarks appear in narrative order.
  // (plc2's reset is bookkeeping that lands in the following cycle's bucket,
  // so it is not a landmark here.)
  for (uint32_t cycle = 1; cycle <= 2; ++cycle) {
    std::vector<std::string> landmarks;
    for (const auto& e : report.events) {
      if (e.cycle != cycle) continue;
      if (e.kind == "reset") continue;
      if (e.actor == "plc1" || e.actor == "plc2") landmarks.push_back(e.kind);
    }
    EXPECT_EQ(landmarks, (std::vector<std::string>{"flag-set", "start", "flag-m9", "flag-m11",
                                                   "restart"}))
        << "cycle " << cycle;
  }
}

TEST(Scenario, MultiCycleKeepsOrdering) {
  ScenarioConfig cfg;
  cfg.cycles = 5;
  auto report = run_scenario(cfg);
  EXPECT_EQ(report.cycles_completed, 5u);
  EXPECT_FALSE(report.deadlock);
  EXPECT_TRUE(check_trace(report).empty());
}

TEST(Scenario, MissingBrokerIsDeadlockNotCrash) {
  ScenarioConfig cfg;
  cfg.cycles = 1;
  cfg.broker_present = false;
  auto report = run_scenario(cfg);
  EXPECT_TRUE(report.deadlock);
  EXPECT_EQ(report.cycles_completed, 0u);
  // Both PLCs got stuck waiting: plc1 raised its flag, plc2 never started.
  EXPECT_TRUE(check_trace(report).empty());
}

TEST(Scenario, ReportRendering) {
  ScenarioConfig cfg;
  cfg.cycles = 1;
  auto report = run_scenario(cfg);
  auto violations = check_trace(report);

  auto summary = render_report(report, violations, false);
  EXPECT_NE(summary.find("cycles: 1/1"), std::string::npos);
  EXPECT_NE(summary.find("violations: 0"), std::string::npos);
  EXPECT_EQ(summary.find("flag-set"), std::string::npos);

  auto full = render_report(report, violations, true);
  EXPECT_NE(full.find("flag-set"), std::string::npos);
  EXPECT_GT(full.size(), summary.size());

  std::vector<std::string> fake{"example violation"};
  auto bad = render_report(report, fake, false);
  EXPECT_NE(bad.find("VIOLATION: example violation"), std::string::npos);
}
