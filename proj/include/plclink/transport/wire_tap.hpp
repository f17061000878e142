// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plclink/core/time.hpp"

namespace plclink {

// One captured transmission. For serial links a_to_b is the master->slave
// direction; for MQTT links it is client->broker.
struct WireRecord {
  SimTime ts{0};
  std::string link;
  bool a_to_b = true;
  std::vector<uint8_t> bytes;
};

// Passive capture of everything that crosses the in-memory links of a run.
// Single-threaded use only.
class WireTap {
 public:
  void record(SimTime ts, const std::string& link, bool a_to_b, std::span<const uint8_t> bytes) {
    records_.push_back({ts, link, a_to_b, {bytes.begin(), bytes.end()}});
  }

  const std::vector<WireRecord>& records() const { return records_; }
  std::vector<WireRecord> take() { return std::move(records_); }

 private:
  std::vector<WireRecord> records_;
};

}  // namespace plclink
