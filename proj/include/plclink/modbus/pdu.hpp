// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace plclink::modbus {

inline constexpr uint8_t kFcReadHoldingRegisters = 0x03;
inline constexpr uint8_t kFcWriteSingleCoil = 0x05;
inline constexpr uint8_t kFcWriteMultipleCoils = 0x0F;

enum class ExceptionCode : uint8_t {
  IllegalFunction = 1,
  IllegalDataAddress = 2,
  IllegalDataValue = 3,
  SlaveDeviceFailure = 4,
};

enum class CodecError {
  CrcMismatch,
  FrameTooShort,
  UnknownFunction,
  LengthMismatch,
  InvalidFieldValue,
  QuantityOutOfRange,
};

const char* to_string(ExceptionCode code);
const char* to_string(CodecError err);

// Station address: 0 is broadcast, 1-247 unicast, 248-255 reserved and
// rejected at construction.
class SlaveAddress {
 public:
  constexpr SlaveAddress() = default;  // broadcast

  static constexpr std::optional<SlaveAddress> make(uint8_t value) {
    if (value > 247) return std::nullopt;
    SlaveAddress a;
    a.value_ = value;
    return a;
  }

  static constexpr SlaveAddress broadcast() { return SlaveAddress{}; }

  constexpr uint8_t value() const { return value_; }
  constexpr bool is_broadcast() const { return value_ == 0; }
  constexpr bool operator==(const SlaveAddress&) const = default;

 private:
  uint8_t value_ = 0;
};

struct ReadHoldingRegistersReq {
  uint16_t start = 0;
  uint16_t quantity = 0;  // 1-125
  bool operator==(const ReadHoldingRegistersReq&) const = default;
};

struct ReadHoldingRegistersResp {
  std::vector<uint16_t> registers;  // 1-125 words
  bool operator==(const ReadHoldingRegistersResp&) const = default;
};

struct WriteSingleCoilReq {
  uint16_t address = 0;
  bool state = false;
  bool operator==(const WriteSingleCoilReq&) const = default;
};

struct WriteSingleCoilResp {  // echo of the request
  uint16_t address = 0;
  bool state = false;
  bool operator==(const WriteSingleCoilResp&) const = default;
};

struct WriteMultipleCoilsReq {
  uint16_t start = 0;
  std::vector<bool> states;  // 1-1968 coils
  bool operator==(const WriteMultipleCoilsReq&) const = default;
};

struct WriteMultipleCoilsResp {
  uint16_t start = 0;
  uint16_t quantity = 0;
  bool operator==(const WriteMultipleCoilsResp&) const = default;
};

struct ExceptionPdu {
  uint8_t function = 0;  // the original function code; wire form adds 0x80
  ExceptionCode code = ExceptionCode::IllegalFunction;
  bool operator==(const ExceptionPdu&) const = default;
};

using Pdu = std::variant<ReadHoldingRegistersReq, ReadHoldingRegistersResp, WriteSingleCoilReq,
                         WriteSingleCoilResp, WriteMultipleCoilsReq, WriteMultipleCoilsResp,
                         ExceptionPdu>;

// Function code as it appears on the wire (exception responses carry the
// original code + 0x80).
uint8_t wire_function(const Pdu& pdu);

bool is_request(const Pdu& pdu);

// Bounds check per PDU kind; nullopt means the PDU is well-formed.
std::optional<CodecError> validate(const Pdu& pdu);

struct RtuFrame {
  SlaveAddress slave;
  Pdu pdu;
  bool operator==(const RtuFrame&) const = default;
};

}  // namespace plclink::modbus
