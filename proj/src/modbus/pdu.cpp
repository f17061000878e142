// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/pdu.hpp"

namespace plclink::modbus {

const char* to_string(ExceptionCode code) {
  switch (code) {
    case ExceptionCode::IllegalFunction: return "illegal-function";
    case ExceptionCode::IllegalDataAddress: return "illegal-data-address";
    case ExceptionCode::IllegalDataValue: return "illegal-data-value";
    case ExceptionCode::SlaveDeviceFailure: return "slave-device-failure";
  }
  return "unknown";
}

const char* to_string(CodecError err) {
  switch (err) {
    case CodecError::CrcMismatch: return "crc-mismatch";
    case CodecError::FrameTooShort: return "frame-too-short";
    case CodecError::UnknownFunction: return "unknown-function";
    case CodecError::LengthMismatch: return "length-mismatch";
    case CodecError::InvalidFieldValue: return "invalid-field-value";
    case CodecError::QuantityOutOfRange: return "quantity-out-of-range";
  }
  return "unknown";
}

namespace {

struct WireFunctionVisitor {
  uint8_t operator()(const ReadHoldingRegistersReq&) const { return kFcReadHoldingRegisters; }
  uint8_t operator()(const ReadHoldingRegistersResp&) const { return kFcReadHoldingRegisters; }
  uint8_t operator()(const WriteSingleCoilReq&) const { return kFcWriteSingleCoil; }
  uint8_t operator()(const WriteSingleCoilResp&) const { return kFcWriteSingleCoil; }
  uint8_t operator()(const WriteMultipleCoilsReq&) const { return kFcWriteMultipleCoils; }
  uint8_t operator()(const WriteMultipleCoilsResp&) const { return kFcWriteMultipleCoils; }
  uint8_t operator()(const ExceptionPdu& e) const { return static_cast<uint8_t>(e.function | 0x80); }
};

}  // namespace

uint8_t wire_function(const Pdu& pdu) { return std::visit(WireFunctionVisitor{}, pdu); }

bool is_request(const Pdu& pdu) {
  return std::holds_alternative<ReadHoldingRegistersReq>(pdu) ||
         std::holds_alternative<WriteSingleCoilReq>(pdu) ||
         std::holds_alternative<WriteMultipleCoilsReq>(pdu);
}

std::optional<CodecError> validate(const Pdu& pdu) {
  using R = std::optional<CodecError>;
  return std::visit(
      [](const auto& p) -> R {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ReadHoldingRegistersReq>) {
          if (p.quantity < 1 || p.quantity > 125) return CodecError::QuantityOutOfRange;
          if (static_cast<uint32_t>(p.start) + p.quantity > 0x10000)
            return CodecError::QuantityOutOfRange;
        } else if constexpr (std::is_same_v<P, ReadHoldingRegistersResp>) {
          if (p.registers.empty() || p.registers.size() > 125)
            return CodecError::QuantityOutOfRange;
        } else if constexpr (std::is_same_v<P, WriteMultipleCoilsReq>) {
          if (p.states.empty() || p.states.size() > 1968) return CodecError::QuantityOutOfRange;
          if (static_cast<uint32_t>(p.start) + p.states.size() > 0x10000)
            return CodecError::QuantityOutOfRange;
        } else if constexpr (std::is_same_v<P, WriteMultipleCoilsResp>) {
          if (p.quantity < 1 || p.quantity > 1968) return CodecError::QuantityOutOfRange;
        } else if constexpr (std::is_same_v<P, ExceptionPdu>) {
          if (p.function > 0x7F) return CodecError::InvalidFieldValue;
          uint8_t c = static_cast<uint8_t>(p.code);
          if (c < 1 || c > 4) return CodecError::InvalidFieldValue;
        }
        return std::nullopt;
      },
      pdu);
}

}  // namespace plclink::modbus
