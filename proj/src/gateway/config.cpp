// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/gateway/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace plclink::gateway {

namespace {

bool bad_topic(const std::string& t) {
  return t.empty() || t.find('\0') != std::string::npos ||
         t.find_first_of("+#") != std::string::npos;
}

using nlohmann::json;

SimDuration ms(int64_t v) { return std::chrono::milliseconds(v); }

void parse_serial(const json& j, modbus::SerialParams& out) {
  out.baud = j.value("baud", out.baud);
  out.data_bits = j.value("data_bits", out.data_bits);
  out.stop_bits = j.value("stop_bits", out.stop_bits);
  if (j.contains("parity")) {
    std::string p = j["parity"];
    if (p == "none") {
      out.parity = modbus::Parity::None;
    } else if (p == "even") {
      out.parity = modbus::Parity::Even;
    } else if (p == "odd") {
      out.parity = modbus::Parity::Odd;
    } else {
      throw std::runtime_error("parity must be none|even|odd");
    }
  }
}

void parse_timing(const json& j, modbus::MasterTiming& out) {
  if (j.contains("response_timeout_ms")) out.response_timeout = ms(j["response_timeout_ms"]);
  if (j.contains("inter_frame_delay_us"))
    out.inter_frame_delay = SimDuration(j["inter_frame_delay_us"].get<int64_t>());
  out.retries = j.value("retries", out.retries);
}

GatewayConfig parse(const json& j) {
  GatewayConfig cfg;
  cfg.name = j.value("name", cfg.name);
  cfg.enabled = j.value("enabled", cfg.enabled);

  if (j.contains("modbus")) {
    const auto& m = j["modbus"];
    cfg.modbus.slave_address = m.value("slave_address", cfg.modbus.slave_address);
    if (m.contains("serial")) parse_serial(m["serial"], cfg.modbus.serial);
    if (m.contains("timing")) parse_timing(m["timing"], cfg.modbus.timing);
    if (m.contains("poll_period_ms")) cfg.modbus.poll_period = ms(m["poll_period_ms"]);
    cfg.modbus.host = m.value("host", cfg.modbus.host);
    cfg.modbus.port = m.value("port", cfg.modbus.port);
  }
  if (j.contains("read_map")) {
    const auto& r = j["read_map"];
    cfg.read_map.start_register = r.value("start_register", cfg.read_map.start_register);
    cfg.read_map.count = r.value("count", cfg.read_map.count);
  }
  if (j.contains("write_map")) {
    const auto& w = j["write_map"];
    if (w.contains("mode")) {
      std::string mode = w["mode"];
      if (mode == "single-coil") {
        cfg.write_map.mode = WriteMode::SingleCoil;
      } else if (mode == "multi-coil") {
        cfg.write_map.mode = WriteMode::MultiCoil;
      } else {
        throw std::runtime_error("write_map.mode must be single-coil|multi-coil");
      }
    }
    cfg.write_map.start_coil = w.value("start_coil", cfg.write_map.start_coil);
    cfg.write_map.count = w.value("count", cfg.write_map.count);
  }
  if (j.contains("mqtt")) {
    const auto& q = j["mqtt"];
    cfg.mqtt.broker_address = q.value("broker_address", cfg.mqtt.broker_address);
    cfg.mqtt.port = q.value("port", cfg.mqtt.port);
    cfg.mqtt.client_id = q.value("client_id", cfg.mqtt.client_id);
    cfg.mqtt.publish_topic = q.value("publish_topic", cfg.mqtt.publish_topic);
    cfg.mqtt.subscribe_topic = q.value("subscribe_topic", cfg.mqtt.subscribe_topic);
    cfg.mqtt.keepalive = q.value("keepalive", cfg.mqtt.keepalive);
    cfg.mqtt.retain = q.value("retain", cfg.mqtt.retain);
  }
  return cfg;
}

}  // namespace

std::optional<std::string> validate(const GatewayConfig& config) {
  if (config.modbus.slave_address < 1 || config.modbus.slave_address > 247)
    return "modbus.slave_address must be 1-247";
  if (config.modbus.poll_period <= SimDuration::zero()) return "modbus.poll_period must be > 0";
  if (config.modbus.timing.response_timeout <= SimDuration::zero())
    return "modbus.timing.response_timeout must be > 0";
  if (config.modbus.timing.inter_frame_delay < config.modbus.serial.inter_frame_gap())
    return "modbus.timing.inter_frame_delay below 3.5 character times";
  if (config.read_map.count < 1 || config.read_map.count > 2)
    return "read_map.count must be 1 or 2";
  if (config.write_map.count < 1 || config.write_map.count > 2)
    return "write_map.count must be 1 or 2";
  if (config.write_map.mode == WriteMode::SingleCoil && config.write_map.count != 1)
    return "write_map.mode single-coil requires count 1";
  if (config.write_map.mode == WriteMode::MultiCoil && config.write_map.count < 2)
    return "write_map.mode multi-coil requires count >= 2";
  if (config.mqtt.retain) return "mqtt.retain must stay false";
  if (config.mqtt.client_id.empty()) return "mqtt.client_id must not be empty";
  if (bad_topic(config.mqtt.publish_topic)) return "mqtt.publish_topic invalid";
  if (bad_topic(config.mqtt.subscribe_topic)) return "mqtt.subscribe_topic invalid";
  if (config.mqtt.publish_topic == config.mqtt.subscribe_topic)
    return "publish_topic and subscribe_topic must differ";
  return std::nullopt;
}

Result<GatewayConfig, std::string> parse_gateway_config(const std::string& json_text) {
  using R = Result<GatewayConfig, std::string>;
  try {
    GatewayConfig cfg = parse(json::parse(json_text));
    if (auto err = validate(cfg)) return R::failure(*err);
    return cfg;
  } catch (const std::exception& e) {
    return R::failure(e.what());
  }
}

Result<GatewayConfig, std::string> load_gateway_config(const std::string& path) {
  using R = Result<GatewayConfig, std::string>;
  std::ifstream in(path);
  if (!in) return R::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gateway_config(buf.str());
}

}  // namespace plclink::gateway
