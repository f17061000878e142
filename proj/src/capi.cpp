// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink.h"

#include <atomic>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "plclink/core/hex.hpp"
#include "plclink/core/log.hpp"
#include "plclink/gateway/gateway.hpp"
#include "plclink/modbus/adu.hpp"
#include "plclink/modbus/crc16.hpp"
#include "plclink/modbus/slave.hpp"
#include "plclink/mqtt/broker.hpp"
#include "plclink/plant/scenario.hpp"
#include "plclink/transport/frame_server.hpp"
#include "plclink/transport/tcp.hpp"

using namespace plclink;

namespace {

thread_local std::string g_last_error;

plclink_status set_error(plclink_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Fallible entry points call this first, so after a successful call
// plclink_last_error() reports an empty string.
void clear_error() { g_last_error.clear(); }

Logger make_logger(int verbose) {
  if (verbose <= 0) return Logger{};
  return Logger(stderr, verbose == 1 ? LogLevel::Info : LogLevel::Debug);
}

size_t copy_out(const std::string& text, char* buf, size_t cap) {
  if (buf && cap > 0) {
    size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

constexpr auto kServiceTick = std::chrono::milliseconds(1);

}  // namespace

extern "C" {

const char* plclink_version(void) { return "plclink 1.0.0"; }

const char* plclink_last_error(void) { return g_last_error.c_str(); }

/* ---- broker ---------------------------------------------------------- */

struct plclink_broker {
  std::unique_ptr<TcpListener> listener;
  Logger log;
  std::atomic<bool> stop{false};
};

plclink_status plclink_broker_create(const char* host, uint16_t port, int verbose,
                                     plclink_broker** out) {
  clear_error();
  if (!host || !out) return set_error(PLCLINK_ERR_INVALID_ARG, "host and out must be non-null");
  auto listener = TcpListener::bind(host, port);
  if (!listener.ok()) return set_error(PLCLINK_ERR_CONFIG, listener.error());
  auto* broker = new plclink_broker;
  broker->listener = std::move(listener.value());
  broker->log = make_logger(verbose);
  *out = broker;
  return PLCLINK_OK;
}

uint16_t plclink_broker_port(const plclink_broker* broker) {
  return broker && broker->listener ? broker->listener->port() : 0;
}

plclink_status plclink_broker_run(plclink_broker* broker) {
  clear_error();
  if (!broker) return set_error(PLCLINK_ERR_INVALID_ARG, "null broker");
  WallClock clock;
  mqtt::Broker service({broker->log});
  while (!broker->stop.load(std::memory_order_relaxed)) {
    SimTime now = clock.now();
    while (auto conn = broker->listener->accept()) {
      service.attach(std::move(conn), now);
    }
    service.poll(now);
    clock.sleep(kServiceTick);
  }
  return PLCLINK_OK;
}

void plclink_broker_stop(plclink_broker* broker) {
  if (broker) broker->stop.store(true, std::memory_order_relaxed);
}

void plclink_broker_destroy(plclink_broker* broker) { delete broker; }

/* ---- simulated PLC ---------------------------------------------------- */

struct plclink_plc {
  int id = 1;
  std::unique_ptr<SingleClientFrameServer> server;
  Logger log;
  std::atomic<bool> stop{false};
};

plclink_status plclink_plc_create(int plc_id, const char* host, uint16_t port, int verbose,
                                  plclink_plc** out) {
  clear_error();
  if (!host || !out) return set_error(PLCLINK_ERR_INVALID_ARG, "host and out must be non-null");
  if (plc_id != 1 && plc_id != 2) return set_error(PLCLINK_ERR_INVALID_ARG, "plc_id must be 1 or 2");
  auto listener = TcpListener::bind(host, port);
  if (!listener.ok()) return set_error(PLCLINK_ERR_CONFIG, listener.error());
  auto* plc = new plclink_plc;
  plc->id = plc_id;
  plc->server = std::make_unique<SingleClientFrameServer>(std::move(listener.value()));
  plc->log = make_logger(verbose);
  *out = plc;
  return PLCLINK_OK;
}

uint16_t plclink_plc_port(const plclink_plc* plc) {
  return plc && plc->server ? plc->server->port() : 0;
}

plclink_status plclink_plc_run(plclink_plc* plc) {
  clear_error();
  if (!plc) return set_error(PLCLINK_ERR_INVALID_ARG, "null plc");
  WallClock clock;
  modbus::DataStore store;
  auto address = modbus::SlaveAddress::make(static_cast<uint8_t>(plc->id));
  modbus::SlaveEndpoint slave(*plc->server, store, {*address, plc->log});

  std::unique_ptr<plant::Plc1Program> prog1;
  std::unique_ptr<plant::Plc2Program> prog2;
  if (plc->id == 1) {
    prog1 = std::make_unique<plant::Plc1Program>(store, plant::default_motor_ticks());
  } else {
    prog2 = std::make_unique<plant::Plc2Program>(store, plant::default_motor_ticks());
  }

  while (!plc->stop.load(std::memory_order_relaxed)) {
    SimTime now = clock.now();
    if (prog1) prog1->scan(now);
    if (prog2) prog2->scan(now);
    slave.poll(now);
    clock.sleep(kServiceTick);
  }
  return PLCLINK_OK;
}

void plclink_plc_stop(plclink_plc* plc) {
  if (plc) plc->stop.store(true, std::memory_order_relaxed);
}

void plclink_plc_destroy(plclink_plc* plc) { delete plc; }

/* ---- gateway ----------------------------------------------------------- */

struct plclink_gateway {
  gateway::GatewayConfig config;
  Logger log;
  std::atomic<bool> stop{false};
};

plclink_status plclink_gateway_create(const char* config_path, int verbose,
                                      plclink_gateway** out) {
  clear_error();
  if (!config_path || !out)
    return set_error(PLCLINK_ERR_INVALID_ARG, "config_path and out must be non-null");
  auto loaded = gateway::load_gateway_config(config_path);
  if (!loaded.ok()) return set_error(PLCLINK_ERR_CONFIG, loaded.error());
  const auto& cfg = loaded.value();
  if (cfg.modbus.port == 0)
    return set_error(PLCLINK_ERR_CONFIG, "modbus.port must be set for a standalone gateway");
  if (!host_resolvable(cfg.mqtt.broker_address))
    return set_error(PLCLINK_ERR_CONFIG,
                     "cannot resolve broker address " + cfg.mqtt.broker_address);
  if (!host_resolvable(cfg.modbus.host))
    return set_error(PLCLINK_ERR_CONFIG, "cannot resolve modbus host " + cfg.modbus.host);
  auto* gw = new plclink_gateway;
  gw->config = cfg;
  gw->log = make_logger(verbose);
  *out = gw;
  return PLCLINK_OK;
}

plclink_status plclink_gateway_run(plclink_gateway* gw) {
  clear_error();
  if (!gw) return set_error(PLCLINK_ERR_INVALID_ARG, "null gateway");
  WallClock clock;
  ReconnectingFrameClient serial(gw->config.modbus.host, gw->config.modbus.port, clock);
  auto dial = [gw]() -> std::unique_ptr<ByteStream> {
    return TcpStream::dial(gw->config.mqtt.broker_address, gw->config.mqtt.port);
  };
  gateway::Gateway bridge(gw->config, serial, dial, nullptr, gw->log);
  while (!gw->stop.load(std::memory_order_relaxed)) {
    bridge.poll(clock.now());
    clock.sleep(kServiceTick);
  }
  bridge.shutdown(clock.now());
  return PLCLINK_OK;
}

void plclink_gateway_stop(plclink_gateway* gw) {
  if (gw) gw->stop.store(true, std::memory_order_relaxed);
}

void plclink_gateway_destroy(plclink_gateway* gw) { delete gw; }

/* ---- scenario ----------------------------------------------------------- */

struct plclink_report {
  plant::ScenarioReport report;
  std::vector<std::string> violations;
};

plclink_status plclink_scenario_run(const char* config_path, uint32_t cycles_override,
                                    int verbose, plclink_report** out) {
  clear_error();
  if (!out) return set_error(PLCLINK_ERR_INVALID_ARG, "out must be non-null");
  plant::ScenarioConfig config;
  if (config_path) {
    auto loaded = plant::load_scenario_config(config_path);
    if (!loaded.ok()) return set_error(PLCLINK_ERR_CONFIG, loaded.error());
    config = loaded.value();
  }
  if (cycles_override > 0) config.cycles = cycles_override;
  config.log = make_logger(verbose);

  auto* result = new plclink_report;
  result->report = plant::run_scenario(config);
  result->violations = plant::check_trace(result->report);
  *out = result;
  return PLCLINK_OK;
}

uint32_t plclink_report_cycles_completed(const plclink_report* report) {
  return report ? report->report.cycles_completed : 0;
}

uint32_t plclink_report_cycles_target(const plclink_report* report) {
  return report ? report->report.cycles_target : 0;
}

int plclink_report_deadlock(const plclink_report* report) {
  return report && report->report.deadlock ? 1 : 0;
}

size_t plclink_report_violation_count(const plclink_report* report) {
  return report ? report->violations.size() : 0;
}

size_t plclink_report_text(const plclink_report* report, int include_events, char* buf,
                           size_t cap) {
  if (!report) return copy_out("", buf, cap);
  return copy_out(plant::render_report(report->report, report->violations, include_events != 0),
                  buf, cap);
}

size_t plclink_report_violation(const plclink_report* report, size_t index, char* buf,
                                size_t cap) {
  if (!report || index >= report->violations.size()) return copy_out("", buf, cap);
  return copy_out(report->violations[index], buf, cap);
}

void plclink_report_destroy(plclink_report* report) { delete report; }

/* ---- decoding ------------------------------------------------------------ */

namespace {

std::string describe_pdu(const modbus::Pdu& pdu) {
  struct Visitor {
    std::string operator()(const modbus::ReadHoldingRegistersReq& p) const {
      return "Read Holding Registers, start " + std::to_string(p.start) + ", qty " +
             std::to_string(p.quantity);
    }
    std::string operator()(const modbus::ReadHoldingRegistersResp& p) const {
      std::string out = "Read Holding Registers response, " +
                        std::to_string(p.registers.size()) + " register(s): [";
      for (size_t i = 0; i < p.registers.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.registers[i]);
      }
      return out + "]";
    }
    std::string operator()(const modbus::WriteSingleCoilReq& p) const {
      return std::string("Write Single Coil, coil ") + std::to_string(p.address) + " -> " +
             (p.state ? "ON" : "OFF");
    }
    std::string operator()(const modbus::WriteSingleCoilResp& p) const {
      return std::string("Write Single Coil echo, coil ") + std::to_string(p.address) + " -> " +
             (p.state ? "ON" : "OFF");
    }
    std::string operator()(const modbus::WriteMultipleCoilsReq& p) const {
      std::string out = "Write Multiple Coils, start " + std::to_string(p.start) + ", states [";
      for (size_t i = 0; i < p.states.size(); ++i) {
        if (i) out += ",";
        out += p.states[i] ? "1" : "0";
      }
      return out + "]";
    }
    std::string operator()(const modbus::WriteMultipleCoilsResp& p) const {
      return "Write Multiple Coils acknowledge, start " + std::to_string(p.start) + ", qty " +
             std::to_string(p.quantity);
    }
    std::string operator()(const modbus::ExceptionPdu& p) const {
      return "Exception for function " + std::to_string(p.function) + ", code " +
             std::to_string(static_cast<int>(p.code)) + " (" + to_string(p.code) + ")";
    }
  };
  return std::visit(Visitor{}, pdu);
}

std::string describe_packet(const mqtt::MqttPacket& packet) {
  struct Visitor {
    std::string operator()(const mqtt::Connect& p) const {
      return "CONNECT client '" + p.client_id + "', keepalive " + std::to_string(p.keepalive) +
             " s, clean_session=" + (p.clean_session ? "true" : "false");
    }
    std::string operator()(const mqtt::Connack& p) const {
      return "CONNACK return code " + std::to_string(p.return_code) +
             (p.return_code == 0 ? " (accepted)" : " (refused)");
    }
    std::string operator()(const mqtt::Publish& p) const {
      std::string out = "PUBLISH topic '" + p.topic + "', payload " +
                        std::to_string(p.payload.size()) + " byte(s)";
      if (!p.payload.empty()) out += " " + to_hex(p.payload);
      out += std::string(", retain=") + (p.retain ? "true" : "false");
      if (p.dup) out += ", dup";
      return out;
    }
    std::string operator()(const mqtt::Subscribe& p) const {
      std::string out = "SUBSCRIBE id " + std::to_string(p.packet_id) + ", filters [";
      for (size_t i = 0; i < p.filters.size(); ++i) {
        if (i) out += ", ";
        out += "'" + p.filters[i] + "'";
      }
      return out + "]";
    }
    std::string operator()(const mqtt::Suback& p) const {
      std::string out = "SUBACK id " + std::to_string(p.packet_id) + ", granted [";
      for (size_t i = 0; i < p.granted.size(); ++i) {
        if (i) out += ", ";
        out += p.granted[i] == 0x80 ? "failure" : std::to_string(p.granted[i]);
      }
      return out + "]";
    }
    std::string operator()(const mqtt::Pingreq&) const { return "PINGREQ"; }
    std::string operator()(const mqtt::Pingresp&) const { return "PINGRESP"; }
    std::string operator()(const mqtt::Disconnect&) const { return "DISCONNECT"; }
  };
  return std::visit(Visitor{}, packet);
}

}  // namespace

plclink_status plclink_decode_modbus(const char* hex, char* buf, size_t cap) {
  clear_error();
  if (!hex) return set_error(PLCLINK_ERR_INVALID_ARG, "null hex input");
  auto bytes = from_hex(hex);
  if (!bytes) {
    copy_out("not valid hex", buf, cap);
    return set_error(PLCLINK_ERR_INVALID_ARG, "input is not valid hex");
  }

  auto as_request = modbus::decode_adu(*bytes, modbus::Role::Slave);
  auto as_response = modbus::decode_adu(*bytes, modbus::Role::Master);
  const auto* good = as_request.ok() ? &as_request : as_response.ok() ? &as_response : nullptr;
  if (good) {
    const auto& frame = good->value();
    std::string text = "slave " + std::to_string(frame.slave.value()) +
                       (frame.slave.is_broadcast() ? " (broadcast)" : "") + ", " +
                       describe_pdu(frame.pdu) + ", CRC OK";
    copy_out(text, buf, cap);
    return PLCLINK_OK;
  }

  if (as_request.error() == modbus::CodecError::CrcMismatch && bytes->size() >= 4) {
    uint16_t computed = modbus::crc16(std::span(*bytes).first(bytes->size() - 2));
    char text[128];
    std::snprintf(text, sizeof text,
                  "CRC MISMATCH: frame carries %02x %02x, computed %02x %02x",
                  (*bytes)[bytes->size() - 2], (*bytes)[bytes->size() - 1], computed & 0xFF,
                  computed >> 8);
    copy_out(text, buf, cap);
    return set_error(PLCLINK_ERR_DECODE, text);
  }

  std::string text = std::string("invalid frame (") + to_string(as_request.error()) + ")";
  copy_out(text, buf, cap);
  return set_error(PLCLINK_ERR_DECODE, text);
}

plclink_status plclink_decode_mqtt(const char* hex, char* buf, size_t cap) {
  clear_error();
  if (!hex) return set_error(PLCLINK_ERR_INVALID_ARG, "null hex input");
  auto bytes = from_hex(hex);
  if (!bytes) {
    copy_out("not valid hex", buf, cap);
    return set_error(PLCLINK_ERR_INVALID_ARG, "input is not valid hex");
  }

  auto decoded = mqtt::decode_packet(*bytes);
  if (!decoded.ok()) {
    std::string text = decoded.error() == mqtt::MqttCodecError::NeedMoreBytes
                           ? "truncated packet"
                           : std::string("invalid packet (") + to_string(decoded.error()) + ")";
    copy_out(text, buf, cap);
    return set_error(PLCLINK_ERR_DECODE, text);
  }
  if (decoded.value().consumed != bytes->size()) {
    std::string text = describe_packet(decoded.value().packet) + ", plus " +
                       std::to_string(bytes->size() - decoded.value().consumed) +
                       " trailing byte(s)";
    copy_out(text, buf, cap);
    return set_error(PLCLINK_ERR_DECODE, "trailing bytes after packet");
  }
  copy_out(describe_packet(decoded.value().packet), buf, cap);
  return PLCLINK_OK;
}

} /* extern "C" */
