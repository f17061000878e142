// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <memory>
#include <random>
#include <string>

#include "plclink/core/time.hpp"
#include "plclink/transport/stream.hpp"
#include "plclink/transport/wire_tap.hpp"

namespace plclink {

// In-memory duplex frame link with two endpoints, `a` and `b`. Frames sent
// on one end are immediately available at the other. Supports deterministic
// single-bit corruption on either direction for fault-injection runs.
// Single-threaded use only.
class MemoryFrameLink {
 public:
  struct Options {
    std::string name = "link";
    WireTap* tap = nullptr;
    Clock* clock = nullptr;  // timestamps for tap records; nullptr -> t=0
    // Probability (percent, 0-100) of flipping one random bit of a frame.
    double corrupt_percent_a_to_b = 0.0;
    double corrupt_percent_b_to_a = 0.0;
    uint64_t seed = 1;
  };

  MemoryFrameLink();
  explicit MemoryFrameLink(Options opts);
  ~MemoryFrameLink();

  FrameTransport& a();
  FrameTransport& b();

  // One-shot fault: corrupt exactly the next b->a frame.
  void corrupt_next_b_to_a() { corrupt_once_b_to_a_ = true; }

  uint64_t corrupted_frames() const { return corrupted_; }
  const std::string& name() const { return opts_.name; }

 private:
  class End;

  void push(bool from_a, std::span<const uint8_t> frame);
  std::optional<std::vector<uint8_t>> pop(bool for_a);

  Options opts_;
  std::deque<std::vector<uint8_t>> to_a_;
  std::deque<std::vector<uint8_t>> to_b_;
  bool a_open_ = true;
  bool b_open_ = true;
  bool corrupt_once_b_to_a_ = false;
  uint64_t corrupted_ = 0;
  std::mt19937_64 rng_;
  std::unique_ptr<End> a_;
  std::unique_ptr<End> b_;

  friend class End;
};

// In-memory duplex byte stream; returns the two endpoints. Closing either
// end lets the peer drain buffered bytes and then observe Closed.
struct MemoryByteLink {
  struct Options {
    std::string name = "stream";
    WireTap* tap = nullptr;
    Clock* clock = nullptr;
  };

  static std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make();
  static std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make(Options opts);
};

}  // namespace plclink
