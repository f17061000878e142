// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/plant/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plclink/modbus/slave.hpp"
#include "plclink/transport/memory_link.hpp"

namespace plclink::plant {

namespace {

using nlohmann::json;

SimDuration ms(int64_t v) { return std::chrono::milliseconds(v); }

ScenarioConfig parse(const json& j) {
  ScenarioConfig cfg;
  cfg.cycles = j.value("cycles", cfg.cycles);
  if (j.contains("tick_ms")) cfg.tick = ms(j["tick_ms"]);
  if (j.contains("poll_period_ms")) cfg.poll_period = ms(j["poll_period_ms"]);
  cfg.keepalive = j.value("keepalive_s", cfg.keepalive);
  cfg.corrupt_percent = j.value("corrupt_percent", cfg.corrupt_percent);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("quiescence_ms")) cfg.quiescence = ms(j["quiescence_ms"]);
  if (j.contains("max_sim_time_ms")) cfg.max_sim_time = ms(j["max_sim_time_ms"]);
  if (j.contains("motor_ticks")) {
    for (const auto& [key, value] : j["motor_ticks"].items()) {
      cfg.motor_ticks[std::stoi(key)] = value.get<uint32_t>();
    }
  }
  if (j.contains("serial")) {
    const auto& s = j["serial"];
    cfg.serial.baud = s.value("baud", cfg.serial.baud);
    cfg.serial.data_bits = s.value("data_bits", cfg.serial.data_bits);
    cfg.serial.stop_bits = s.value("stop_bits", cfg.serial.stop_bits);
    if (s.contains("parity")) {
      std::string p = s["parity"];
      if (p == "none") {
        cfg.serial.parity = modbus::Parity::None;
      } else if (p == "even") {
        cfg.serial.parity = modbus::Parity::Even;
      } else if (p == "odd") {
        cfg.serial.parity = modbus::Parity::Odd;
      } else {
        throw std::runtime_error("parity must be none|even|odd");
      }
    }
    cfg.timing.inter_frame_delay = cfg.serial.inter_frame_gap();
  }
  if (j.contains("timing")) {
    const auto& t = j["timing"];
    if (t.contains("response_timeout_ms")) cfg.timing.response_timeout = ms(t["response_timeout_ms"]);
    if (t.contains("inter_frame_delay_us"))
      cfg.timing.inter_frame_delay = SimDuration(t["inter_frame_delay_us"].get<int64_t>());
    cfg.timing.retries = t.value("retries", cfg.timing.retries);
  }
  if (cfg.cycles < 1) throw std::runtime_error("cycles must be >= 1");
  return cfg;
}

gateway::GatewayConfig make_gateway_config(const ScenarioConfig& cfg, int which) {
  gateway::GatewayConfig g;
  g.name = which == 1 ? "gw1" : "gw2";
  g.modbus.slave_address = static_cast<uint8_t>(which);
  g.modbus.serial = cfg.serial;
  g.modbus.timing = cfg.timing;
  g.modbus.poll_period = cfg.poll_period;
  g.read_map.start_register = 0;
  g.read_map.count = which == 1 ? 1 : 2;
  if (which == 1) {
    // Bridge 1 carries the peer's two acknowledge flags back as two coils.
    g.write_map = {gateway::WriteMode::MultiCoil, 0, 2};
    g.mqtt.publish_topic = "plc1/flags";
    g.mqtt.subscribe_topic = "plc2/flags";
  } else {
    g.write_map = {gateway::WriteMode::SingleCoil, 0, 1};
    g.mqtt.publish_topic = "plc2/flags";
    g.mqtt.subscribe_topic = "plc1/flags";
  }
  g.mqtt.client_id = g.name;
  g.mqtt.keepalive = cfg.keepalive;
  return g;
}

}  // namespace

Result<ScenarioConfig, std::string> parse_scenario_config(const std::string& json_text) {
  using R = Result<ScenarioConfig, std::string>;
  try {
    return parse(json::parse(json_text));
  } catch (const std::exception& e) {
    return R::failure(e.what());
  }
}

Result<ScenarioConfig, std::string> load_scenario_config(const std::string& path) {
  using R = Result<ScenarioConfig, std::string>;
  std::ifstream in(path);
  if (!in) return R::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str());
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  LogicalClock clock;
  WireTap tap;
  EventCollector collector;
  mqtt::Broker broker({config.log});

  modbus::DataStore store1, store2;
  Plc1Program prog1(store1, config.motor_ticks, &collector);
  Plc2Program prog2(store2, config.motor_ticks, &collector);

  MemoryFrameLink serial1({"serial-plc1", &tap, &clock, 0.0, config.corrupt_percent, config.seed});
  MemoryFrameLink serial2(
      {"serial-plc2", &tap, &clock, 0.0, config.corrupt_percent, config.seed + 1});

  auto addr1 = modbus::SlaveAddress::make(1);
  auto addr2 = modbus::SlaveAddress::make(2);
  modbus::SlaveEndpoint slave1(serial1.b(), store1, {*addr1, config.log});
  modbus::SlaveEndpoint slave2(serial2.b(), store2, {*addr2, config.log});

  auto make_dialer = [&](const std::string& link_name) {
    return [&, link_name]() -> std::unique_ptr<ByteStream> {
      if (!config.broker_present) return nullptr;
      auto [client_end, broker_end] =
          MemoryByteLink::make({link_name, &tap, &clock});
      broker.attach(std::move(broker_end), clock.now());
      return std::move(client_end);
    };
  };

  gateway::Gateway gw1(make_gateway_config(config, 1), serial1.a(), make_dialer("mqtt-gw1"),
                       &collector, config.log);
  gateway::Gateway gw2(make_gateway_config(config, 2), serial2.a(), make_dialer("mqtt-gw2"),
                       &collector, config.log);

  SimTime max_time = config.max_sim_time > SimDuration::zero()
                         ? config.max_sim_time
                         : std::chrono::seconds(30) + config.cycles * std::chrono::seconds(2);

  ScenarioReport report;
  report.cycles_target = config.cycles;

  uint64_t last_seq = 0;
  SimTime last_progress{0};
  while (prog1.cycles_completed() < config.cycles) {
    SimTime now = clock.now();
    prog1.scan(now);
    prog2.scan(now);
    slave1.poll(now);
    slave2.poll(now);
    broker.poll(now);
    gw1.poll(now);
    gw2.poll(now);

    if (collector.next_seq() != last_seq) {
      last_seq = collector.next_seq();
      last_progress = now;
    } else if (now - last_progress >= config.quiescence) {
      report.deadlock = true;
      break;
    }
    if (now >= max_time) {
      report.deadlock = true;
      break;
    }
    clock.advance(config.tick);
  }

  report.cycles_completed = prog1.cycles_completed();
  report.end_time = clock.now();
  report.events = collector.take();
  report.wire = tap.take();
  report.gw1 = gw1.counters();
  report.gw2 = gw2.counters();
  report.broker = broker.stats();
  report.slave_dropped[0] = slave1.dropped_frames();
  report.slave_dropped[1] = slave2.dropped_frames();
  report.serial_corrupted[0] = serial1.corrupted_frames();
  report.serial_corrupted[1] = serial2.corrupted_frames();
  return report;
}

std::vector<std::string> check_trace(const ScenarioReport& report) {
  return check_event_order(report.events);
}

std::string render_report(const ScenarioReport& report,
                          const std::vector<std::string>& violations, bool include_events) {
  std::ostringstream out;
  if (include_events) {
    for (const auto& e : report.events) out << format_event(e) << "\n";
  }
  out << "cycles: " << report.cycles_completed << "/" << report.cycles_target;
  if (report.deadlock) out << "  DEADLOCK";
  out << "\n";
  out << "sim-time: " << static_cast<double>(report.end_time.count()) / 1'000'000.0 << " s, "
      << report.events.size() << " events, " << report.wire.size() << " wire records\n";

  auto gw_line = [&](const char* name, const gateway::Gateway::Counters& c) {
    out << name << ": polls=" << c.polls << " poll-failures=" << c.poll_failures
        << " publishes=" << c.publishes << " receives=" << c.receives
        << " writes-ok=" << c.writes_ok << " writes-lost=" << c.writes_lost
        << " payload-errors=" << c.payload_errors << " sessions=" << c.reconnects << "\n";
  };
  gw_line("gw1", report.gw1);
  gw_line("gw2", report.gw2);

  out << "broker: connects=" << report.broker.connects << " publishes=" << report.broker.publishes
      << " routed=" << report.broker.routed
      << " retained-ignored=" << report.broker.retained_ignored
      << " wildcard-rejected=" << report.broker.wildcard_rejected << "\n";
  out << "serial: dropped=" << report.slave_dropped[0] << "/" << report.slave_dropped[1]
      << " corrupted=" << report.serial_corrupted[0] << "/" << report.serial_corrupted[1] << "\n";

  out << "violations: " << violations.size() << "\n";
  for (const auto& v : violations) out << "  VIOLATION: " << v << "\n";
  return out.str();
}

}  // namespace plclink::plant
