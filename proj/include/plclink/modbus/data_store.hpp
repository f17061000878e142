// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "plclink/core/result.hpp"
#include "plclink/modbus/pdu.hpp"

namespace plclink::modbus {

struct AddressWindow {
  uint16_t start = 0;
  uint16_t count = 16;

  constexpr bool contains(uint32_t address, uint32_t n = 1) const {
    return n >= 1 && address >= start &&
           address + n <= static_cast<uint32_t>(start) + count;
  }
};

// A PLC's process image: holding registers and coils. Unwritten addresses
// inside the window read as 0/false; anything outside the window is an
// IllegalDataAddress on the protocol paths.
class DataStore {
 public:
  struct Windows {
    AddressWindow holding_registers{};
    AddressWindow coils{};
  };

  DataStore() = default;
  explicit DataStore(Windows windows) : windows_(windows) {}

  Result<std::vector<uint16_t>, ExceptionCode> read_registers(uint16_t start,
                                                              uint16_t count) const;
  std::optional<ExceptionCode> write_coil(uint16_t address, bool value);
  std::optional<ExceptionCode> write_coils(uint16_t start, const std::vector<bool>& states);

  // Program-side access. Addresses must lie inside the windows.
  uint16_t reg(uint16_t address) const;
  void set_reg(uint16_t address, uint16_t value);
  bool coil(uint16_t address) const;
  void set_coil(uint16_t address, bool value);

  const Windows& windows() const { return windows_; }

 private:
  Windows windows_;
  std::map<uint16_t, uint16_t> registers_;
  std::map<uint16_t, bool> coils_;
};

}  // namespace plclink::modbus
