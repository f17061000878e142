// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "plclink/modbus/pdu.hpp"
#include "plclink/mqtt/packet.hpp"
#include "plclink/transport/wire_tap.hpp"

namespace plclink::testutil {

// Independent CRC oracle: one bit at a time, no table. Any divergence from
// the production implementation is a bug in one of them.
inline uint16_t crc16_bitwise(std::span<const uint8_t> data) {
  uint16_t crc = 0xFFFF;
  for (uint8_t byte : data) {
    crc = static_cast<uint16_t>(crc ^ byte);
    for (int bit = 0; bit < 8; ++bit) {
      bool lsb = crc & 1u;
      crc = static_cast<uint16_t>(crc >> 1);
      if (lsb) crc = static_cast<uint16_t>(crc ^ 0xA001);
    }
  }
  return crc;
}

// Valid random frames for roundtrip fuzzing. Requests may be broadcast;
// responses never are.
modbus::RtuFrame random_request(std::mt19937_64& rng);
modbus::RtuFrame random_response(std::mt19937_64& rng);

// Random well-formed packet of any supported type.
mqtt::MqttPacket random_packet(std::mt19937_64& rng);

// Reassembles one direction of one tapped MQTT link and decodes every packet
// in it. nullopt if the stream is malformed or ends mid-packet.
std::optional<std::vector<mqtt::MqttPacket>> scan_mqtt_stream(
    const std::vector<WireRecord>& records, const std::string& link, bool a_to_b);

}  // namespace plclink::testutil
