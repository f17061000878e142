// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/adu.hpp"

#include <cassert>

#include "plclink/modbus/crc16.hpp"

namespace plclink::modbus {

namespace {

void put16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v & 0xFF));
}

uint16_t get16(std::span<const uint8_t> b, size_t i) {
  return static_cast<uint16_t>(b[i] << 8 | b[i + 1]);
}

struct EncodeBody {
  std::vector<uint8_t>& out;

  void operator()(const ReadHoldingRegistersReq& p) const {
    out.push_back(kFcReadHoldingRegisters);
    put16(out, p.start);
    put16(out, p.quantity);
  }
  void operator()(const ReadHoldingRegistersResp& p) const {
    out.push_back(kFcReadHoldingRegisters);
    out.push_back(static_cast<uint8_t>(p.registers.size() * 2));
    for (uint16_t w : p.registers) put16(out, w);
  }
  void operator()(const WriteSingleCoilReq& p) const {
    out.push_back(kFcWriteSingleCoil);
    put16(out, p.address);
    put16(out, p.state ? 0xFF00 : 0x0000);
  }
  void operator()(const WriteSingleCoilResp& p) const {
    out.push_back(kFcWriteSingleCoil);
    put16(out, p.address);
    put16(out, p.state ? 0xFF00 : 0x0000);
  }
  void operator()(const WriteMultipleCoilsReq& p) const {
    out.push_back(kFcWriteMultipleCoils);
    put16(out, p.start);
    put16(out, static_cast<uint16_t>(p.states.size()));
    auto packed = pack_coils(p.states);
    assert(packed.ok());
    out.push_back(packed.value().byte_count);
    out.insert(out.end(), packed.value().bytes.begin(), packed.value().bytes.end());
  }
  void operator()(const WriteMultipleCoilsResp& p) const {
    out.push_back(kFcWriteMultipleCoils);
    put16(out, p.start);
    put16(out, p.quantity);
  }
  void operator()(const ExceptionPdu& p) const {
    out.push_back(static_cast<uint8_t>(p.function | 0x80));
    out.push_back(static_cast<uint8_t>(p.code));
  }
};

using DecodeResult = Result<RtuFrame, CodecError>;

DecodeResult fail(CodecError e) { return DecodeResult::failure(e); }

DecodeResult parse_fc03(SlaveAddress slave, std::span<const uint8_t> data, Role role) {
  if (role == Role::Slave) {
    if (data.size() != 4) return fail(CodecError::LengthMismatch);
    ReadHoldingRegistersReq req{get16(data, 0), get16(data, 2)};
    if (auto err = validate(Pdu{req})) return fail(*err);
    return RtuFrame{slave, req};
  }
  if (data.size() < 1) return fail(CodecError::LengthMismatch);
  uint8_t byte_count = data[0];
  if (data.size() != 1u + byte_count || byte_count % 2 != 0)
    return fail(CodecError::LengthMismatch);
  ReadHoldingRegistersResp resp;
  for (size_t i = 1; i < data.size(); i += 2) resp.registers.push_back(get16(data, i));
  if (auto err = validate(Pdu{resp})) return fail(*err);
  return RtuFrame{slave, resp};
}

DecodeResult parse_fc05(SlaveAddress slave, std::span<const uint8_t> data, Role role) {
  if (data.size() != 4) return fail(CodecError::LengthMismatch);
  uint16_t value = get16(data, 2);
  if (value != 0xFF00 && value != 0x0000) return fail(CodecError::InvalidFieldValue);
  uint16_t address = get16(data, 0);
  bool state = value == 0xFF00;
  if (role == Role::Slave) return RtuFrame{slave, WriteSingleCoilReq{address, state}};
  return RtuFrame{slave, WriteSingleCoilResp{address, state}};
}

DecodeResult parse_fc15(SlaveAddress slave, std::span<const uint8_t> data, Role role) {
  if (role == Role::Master) {
    if (data.size() != 4) return fail(CodecError::LengthMismatch);
    WriteMultipleCoilsResp resp{get16(data, 0), get16(data, 2)};
    if (auto err = validate(Pdu{resp})) return fail(*err);
    return RtuFrame{slave, resp};
  }
  if (data.size() < 5) return fail(CodecError::LengthMismatch);
  uint16_t start = get16(data, 0);
  uint16_t quantity = get16(data, 2);
  if (quantity < 1 || quantity > 1968) return fail(CodecError::QuantityOutOfRange);
  uint8_t byte_count = data[4];
  if (byte_count != (quantity + 7) / 8) return fail(CodecError::LengthMismatch);
  if (data.size() != 5u + byte_count) return fail(CodecError::LengthMismatch);
  WriteMultipleCoilsReq req{start, unpack_coils(data.subspan(5), quantity)};
  if (auto err = validate(Pdu{req})) return fail(*err);
  return RtuFrame{slave, req};
}

}  // namespace

std::vector<uint8_t> encode_adu(const RtuFrame& frame) {
  assert(!validate(frame.pdu));
  std::vector<uint8_t> out;
  out.push_back(frame.slave.value());
  std::visit(EncodeBody{out}, frame.pdu);
  uint16_t crc = crc16(out);
  out.push_back(static_cast<uint8_t>(crc & 0xFF));
  out.push_back(static_cast<uint8_t>(crc >> 8));
  return out;
}

Result<RtuFrame, CodecError> decode_adu(std::span<const uint8_t> bytes, Role role) {
  if (bytes.size() < 4) return fail(CodecError::FrameTooShort);
  uint16_t wire_crc = static_cast<uint16_t>(bytes[bytes.size() - 2] | bytes[bytes.size() - 1] << 8);
  if (crc16(bytes.first(bytes.size() - 2)) != wire_crc) return fail(CodecError::CrcMismatch);

  auto slave = SlaveAddress::make(bytes[0]);
  if (!slave) return fail(CodecError::InvalidFieldValue);
  uint8_t function = bytes[1];
  auto data = bytes.subspan(2, bytes.size() - 4);

  if (function & 0x80) {
    uint8_t original = function & 0x7F;
    if (role != Role::Master) return fail(CodecError::UnknownFunction);
    if (original != kFcReadHoldingRegisters && original != kFcWriteSingleCoil &&
        original != kFcWriteMultipleCoils)
      return fail(CodecError::UnknownFunction);
    if (data.size() != 1) return fail(CodecError::LengthMismatch);
    if (data[0] < 1 || data[0] > 4) return fail(CodecError::InvalidFieldValue);
    return RtuFrame{*slave, ExceptionPdu{original, static_cast<ExceptionCode>(data[0])}};
  }

  switch (function) {
    case kFcReadHoldingRegisters: return parse_fc03(*slave, data, role);
    case kFcWriteSingleCoil: return parse_fc05(*slave, data, role);
    case kFcWriteMultipleCoils: return parse_fc15(*slave, data, role);
    default: return fail(CodecError::UnknownFunction);
  }
}

Result<PackedCoils, CodecError> pack_coils(const std::vector<bool>& states) {
  if (states.empty() || states.size() > 1968)
    return Result<PackedCoils, CodecError>::failure(CodecError::QuantityOutOfRange);
  PackedCoils out;
  out.byte_count = static_cast<uint8_t>((states.size() + 7) / 8);
  out.bytes.assign(out.byte_count, 0);
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i]) out.bytes[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
  }
  return out;
}

std::vector<bool> unpack_coils(std::span<const uint8_t> bytes, size_t count) {
  std::vector<bool> out;
  out.reserve(count);
  for (size_t i = 0; i < count && i / 8 < bytes.size(); ++i) {
    out.push_back((bytes[i / 8] >> (i % 8)) & 1u);
  }
  return out;
}

}  // namespace plclink::modbus
