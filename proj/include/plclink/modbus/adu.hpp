// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "plclink/core/result.hpp"
#include "plclink/modbus/pdu.hpp"

namespace plclink::modbus {

// Which side of the line is parsing: a slave parses requests, a master
// parses responses. The two directions reuse function codes with different
// payload layouts (FC03 in particular).
enum class Role { Master, Slave };

// [address][function][data...][crc-lo][crc-hi]. The frame must pass
// validate(); feeding an out-of-bounds PDU is a programming error.
std::vector<uint8_t> encode_adu(const RtuFrame& frame);

// Checks length and CRC first, then parses per role.
Result<RtuFrame, CodecError> decode_adu(std::span<const uint8_t> bytes, Role role);

struct PackedCoils {
  uint8_t byte_count = 0;
  std::vector<uint8_t> bytes;
  bool operator==(const PackedCoils&) const = default;
};

// FC15 bit packing: bit i of byte i/8 = states[i], unused high bits zero.
Result<PackedCoils, CodecError> pack_coils(const std::vector<bool>& states);

std::vector<bool> unpack_coils(std::span<const uint8_t> bytes, size_t count);

}  // namespace plclink::modbus
