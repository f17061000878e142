// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "plclink/core/time.hpp"

namespace plclink::modbus {

enum class Parity : uint8_t { None, Even, Odd };

// Line settings for one RTU serial segment. Defaults are 9600-8E1.
struct SerialParams {
  uint32_t baud = 9600;
  Parity parity = Parity::Even;
  uint8_t data_bits = 8;
  uint8_t stop_bits = 1;

  // start bit + data + optional parity + stop bits
  constexpr uint32_t bits_per_char() const {
    return 1u + data_bits + (parity != Parity::None ? 1u : 0u) + stop_bits;
  }

  constexpr SimDuration char_time() const {
    return SimDuration(static_cast<int64_t>(bits_per_char()) * 1'000'000 / baud);
  }

  // Silent interval that delimits RTU frames: 3.5 character times. Truncated
  // to whole microseconds so an observed gap of exactly this value counts.
  constexpr SimDuration inter_frame_gap() const {
    return SimDuration(static_cast<int64_t>(bits_per_char()) * 7 * 1'000'000 / (2 * baud));
  }

  constexpr bool operator==(const SerialParams&) const = default;
};

// Master-side transaction pacing. inter_frame_delay must stay >= the 3.5
// character gap of the line it runs on.
struct MasterTiming {
  SimDuration response_timeout = std::chrono::milliseconds(500);
  SimDuration inter_frame_delay = SerialParams{}.inter_frame_gap();
  uint32_t retries = 1;

  constexpr bool operator==(const MasterTiming&) const = default;
};

}  // namespace plclink::modbus
