// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "plclink/core/time.hpp"
#include "plclink/modbus/serial.hpp"

namespace plclink::modbus {

// Delimits RTU frames on a raw byte stream by the 3.5-character silent
// interval. Bytes passed to a single push() are treated as contiguous on the
// line; the gap is measured between pushes.
class RtuFramer {
 public:
  explicit RtuFramer(const SerialParams& params) : gap_(params.inter_frame_gap()) {}

  // Timestamps must be non-decreasing across calls. Returns the frames
  // completed by the silence this push reveals.
  std::vector<std::vector<uint8_t>> push(std::span<const uint8_t> bytes, SimTime ts);

  // Closes the pending frame if the line has been silent long enough.
  std::vector<std::vector<uint8_t>> poll(SimTime now);

  SimDuration gap() const { return gap_; }

 private:
  SimDuration gap_;
  std::vector<uint8_t> pending_;
  SimTime last_byte_{0};
};

}  // namespace plclink::modbus
