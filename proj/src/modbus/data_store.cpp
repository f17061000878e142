// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/data_store.hpp"

#include <cassert>

namespace plclink::modbus {

Result<std::vector<uint16_t>, ExceptionCode> DataStore::read_registers(uint16_t start,
                                                                       uint16_t count) const {
  using R = Result<std::vector<uint16_t>, ExceptionCode>;
  if (!windows_.holding_registers.contains(start, count))
    return R::failure(ExceptionCode::IllegalDataAddress);
  std::vector<uint16_t> out;
  out.reserve(count);
  for (uint32_t a = start; a < static_cast<uint32_t>(start) + count; ++a) {
    auto it = registers_.find(static_cast<uint16_t>(a));
    out.push_back(it == registers_.end() ? 0 : it->second);
  }
  return out;
}

std::optional<ExceptionCode> DataStore::write_coil(uint16_t address, bool value) {
  if (!windows_.coils.contains(address)) return ExceptionCode::IllegalDataAddress;
  coils_[address] = value;
  return std::nullopt;
}

std::optional<ExceptionCode> DataStore::write_coils(uint16_t start,
                                                    const std::vector<bool>& states) {
  if (!windows_.coils.contains(start, static_cast<uint32_t>(states.size())))
    return ExceptionCode::IllegalDataAddress;
  for (size_t i = 0; i < states.size(); ++i) {
    coils_[static_cast<uint16_t>(start + i)] = states[i];
  }
  return std::nullopt;
}

uint16_t DataStore::reg(uint16_t address) const {
  assert(windows_.holding_registers.contains(address));
  auto it = registers_.find(address);
  return it == registers_.end() ? 0 : it->second;
}

void DataStore::set_reg(uint16_t address, uint16_t value) {
  assert(windows_.holding_registers.contains(address));
  registers_[address] = value;
}

bool DataStore::coil(uint16_t address) const {
  assert(windows_.coils.contains(address));
  auto it = coils_.find(address);
  return it != coils_.end() && it->second;
}

void DataStore::set_coil(uint16_t address, bool value) {
  assert(windows_.coils.contains(address));
  coils_[address] = value;
}

}  // namespace plclink::modbus
