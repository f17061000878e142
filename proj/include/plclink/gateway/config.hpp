// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "plclink/core/result.hpp"
#include "plclink/modbus/pdu.hpp"
#include "plclink/modbus/serial.hpp"

namespace plclink::gateway {

enum class WriteMode { SingleCoil, MultiCoil };

// Full wiring of one bridge: which slave it polls, which registers it
// publishes, which coils it writes from subscribed payloads, and its broker
// session settings.
struct GatewayConfig {
  std::string name = "gw";

  struct Modbus {
    uint8_t slave_address = 1;
    modbus::SerialParams serial{};
    modbus::MasterTiming timing{};
    SimDuration poll_period = std::chrono::milliseconds(50);
    // Serial-over-TCP endpoint of the PLC, used when the gateway runs as its
    // own process. Ignored when a transport is injected directly.
    std::string host = "127.0.0.1";
    uint16_t port = 0;
  } modbus;

  struct ReadMap {
    uint16_t start_register = 0;
    uint16_t count = 1;  // 1 or 2
  } read_map;

  struct WriteMap {
    WriteMode mode = WriteMode::SingleCoil;
    uint16_t start_coil = 0;
    uint16_t count = 1;  // single-coil <=> 1, multi-coil <=> 2
  } write_map;

  struct Mqtt {
    std::string broker_address = "127.0.0.1";
    uint16_t port = 1883;
    std::string client_id;
    std::string publish_topic;
    std::string subscribe_topic;
    uint16_t keepalive = 60;
    bool retain = false;  // must stay false
  } mqtt;

  bool enabled = true;
};

// Checks the cross-field invariants; returns an explanation on failure.
std::optional<std::string> validate(const GatewayConfig& config);

Result<GatewayConfig, std::string> parse_gateway_config(const std::string& json_text);
Result<GatewayConfig, std::string> load_gateway_config(const std::string& path);

}  // namespace plclink::gateway
