// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace plclink {

enum class StreamState { Connecting, Open, Closed };

// Ordered duplex byte stream. All operations are non-blocking; callers poll.
class ByteStream {
 public:
  virtual ~ByteStream() = default;

  // Accepts the whole span (buffering internally if needed) unless the
  // stream is closed, in which case the bytes are dropped and 0 is returned.
  virtual size_t write(std::span<const uint8_t> bytes) = 0;

  // Returns the number of bytes placed into `out`; 0 means nothing pending.
  virtual size_t read(std::span<uint8_t> out) = 0;

  virtual StreamState state() = 0;
  virtual void close() = 0;
};

// Delivers whole pre-delimited frames. This is the boundary-mode serial
// transport; gap-based delimiting lives in the RTU framer instead.
class FrameTransport {
 public:
  virtual ~FrameTransport() = default;
  virtual bool send(std::span<const uint8_t> frame) = 0;
  virtual std::optional<std::vector<uint8_t>> receive() = 0;
  virtual bool up() = 0;
  virtual void close() = 0;
};

}  // namespace plclink
