// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "plclink/core/result.hpp"

namespace plclink::mqtt {

// MQTT 3.1.1, QoS 0 subset. Packet ids appear only on SUBSCRIBE/SUBACK.

struct Connect {
  std::string client_id;
  uint16_t keepalive = 60;  // seconds; 0 disables
  bool clean_session = true;
  bool operator==(const Connect&) const = default;
};

struct Connack {
  uint8_t return_code = 0;  // 0 accepted, 1-5 refused
  bool operator==(const Connack&) const = default;
};

struct Publish {
  std::string topic;
  std::vector<uint8_t> payload;
  bool retain = false;
  bool dup = false;
  bool operator==(const Publish&) const = default;
};

struct Subscribe {
  uint16_t packet_id = 0;
  std::vector<std::string> filters;  // requested qos is always 0
  bool operator==(const Subscribe&) const = default;
};

struct Suback {
  uint16_t packet_id = 0;
  std::vector<uint8_t> granted;  // 0x00 = qos 0 granted, 0x80 = failure
  bool operator==(const Suback&) const = default;
};

struct Pingreq {
  bool operator==(const Pingreq&) const = default;
};
struct Pingresp {
  bool operator==(const Pingresp&) const = default;
};
struct Disconnect {
  bool operator==(const Disconnect&) const = default;
};

using MqttPacket = std::variant<Connect, Connack, Publish, Subscribe, Suback, Pingreq, Pingresp,
                                Disconnect>;

enum class MqttCodecError {
  MalformedPacket,
  UnsupportedPacket,  // packet type or feature outside the QoS-0 subset
  NeedMoreBytes,      // incomplete prefix; not a failure in stream parsing
  ValueTooLarge,
};

const char* to_string(MqttCodecError err);

inline constexpr uint32_t kMaxRemainingLength = 268'435'455;

// Little-endian base-128 with continuation bits, 1-4 bytes.
Result<std::vector<uint8_t>, MqttCodecError> encode_remaining_length(uint32_t n);

std::vector<uint8_t> encode_packet(const MqttPacket& packet);

struct DecodedPacket {
  MqttPacket packet;
  size_t consumed = 0;
  bool operator==(const DecodedPacket&) const = default;
};

// Decodes one packet from the head of `bytes`, reporting how much it
// consumed so callers can scan a byte stream.
Result<DecodedPacket, MqttCodecError> decode_packet(std::span<const uint8_t> bytes);

const char* packet_name(const MqttPacket& packet);

}  // namespace plclink::mqtt
