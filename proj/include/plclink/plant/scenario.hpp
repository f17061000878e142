// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "plclink/core/log.hpp"
#include "plclink/core/result.hpp"
#include "plclink/gateway/gateway.hpp"
#include "plclink/modbus/serial.hpp"
#include "plclink/mqtt/broker.hpp"
#include "plclink/plant/plc.hpp"
#include "plclink/plant/trace.hpp"
#include "plclink/transport/wire_tap.hpp"

namespace plclink::plant {

// Everything needed to stand up the five-actor run: two PLCs with their
// programs, two bridges, one broker, all on one logical clock.
struct ScenarioConfig {
  uint32_t cycles = 1;
  SimDuration tick = std::chrono::milliseconds(1);
  std::map<int, uint32_t> motor_ticks = default_motor_ticks();
  modbus::SerialParams serial{};
  modbus::MasterTiming timing{};
  SimDuration poll_period = std::chrono::milliseconds(50);
  uint16_t keepalive = 5;  // seconds; short keeps simulated runs snappy
  // Probability (percent) of single-bit corruption on slave->master serial
  // responses, applied to both PLC links.
  double corrupt_percent = 0.0;
  uint64_t seed = 1;
  SimDuration quiescence = std::chrono::seconds(5);  // silence -> deadlock
  SimDuration max_sim_time{0};                       // 0 = derived from cycles
  bool broker_present = true;
  Logger log{};
};

Result<ScenarioConfig, std::string> parse_scenario_config(const std::string& json_text);
Result<ScenarioConfig, std::string> load_scenario_config(const std::string& path);

struct ScenarioReport {
  uint32_t cycles_target = 0;
  uint32_t cycles_completed = 0;
  bool deadlock = false;
  SimTime end_time{0};
  std::vector<TraceEvent> events;
  std::vector<WireRecord> wire;
  gateway::Gateway::Counters gw1;
  gateway::Gateway::Counters gw2;
  mqtt::Broker::Stats broker;
  uint64_t slave_dropped[2] = {0, 0};
  uint64_t serial_corrupted[2] = {0, 0};
};

// Deterministic in-process run: single logical clock, fixed actor order.
ScenarioReport run_scenario(const ScenarioConfig& config);

// Ordering oracle over a finished run; empty result means success.
std::vector<std::string> check_trace(const ScenarioReport& report);

std::string render_report(const ScenarioReport& report,
                          const std::vector<std::string>& violations, bool include_events);

}  // namespace plclink::plant
