// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

namespace plclink::modbus {

// CRC-16/MODBUS: init 0xFFFF, reflected polynomial 0xA001, no final XOR.
// Transmitted on the wire low byte first. Table-driven.
uint16_t crc16(std::span<const uint8_t> data);

}  // namespace plclink::modbus
