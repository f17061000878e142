// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/framer.hpp"

namespace plclink::modbus {

std::vector<std::vector<uint8_t>> RtuFramer::push(std::span<const uint8_t> bytes, SimTime ts) {
  auto out = poll(ts);
  if (!bytes.empty()) {
    pending_.insert(pending_.end(), bytes.begin(), bytes.end());
    last_byte_ = ts;
  }
  return out;
}

std::vector<std::vector<uint8_t>> RtuFramer::poll(SimTime now) {
  std::vector<std::vector<uint8_t>> out;
  if (!pending_.empty() && now - last_byte_ >= gap_) {
    out.push_back(std::move(pending_));
    pending_.clear();
  }
  return out;
}

}  // namespace plclink::modbus
