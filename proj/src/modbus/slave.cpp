// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/slave.hpp"

#include "plclink/core/hex.hpp"

namespace plclink::modbus {

namespace {

struct HandleRequest {
  DataStore& store;
  bool broadcast;

  std::optional<Pdu> operator()(const ReadHoldingRegistersReq& p) const {
    if (broadcast) return std::nullopt;  // reads make no sense unaddressed
    auto r = store.read_registers(p.start, p.quantity);
    if (!r.ok()) return Pdu{ExceptionPdu{kFcReadHoldingRegisters, r.error()}};
    return Pdu{ReadHoldingRegistersResp{std::move(r.value())}};
  }
  std::optional<Pdu> operator()(const WriteSingleCoilReq& p) const {
    auto err = store.write_coil(p.address, p.state);
    if (broadcast) return std::nullopt;
    if (err) return Pdu{ExceptionPdu{kFcWriteSingleCoil, *err}};
    return Pdu{WriteSingleCoilResp{p.address, p.state}};
  }
  std::optional<Pdu> operator()(const WriteMultipleCoilsReq& p) const {
    auto err = store.write_coils(p.start, p.states);
    if (broadcast) return std::nullopt;
    if (err) return Pdu{ExceptionPdu{kFcWriteMultipleCoils, *err}};
    return Pdu{WriteMultipleCoilsResp{p.start, static_cast<uint16_t>(p.states.size())}};
  }
  template <typename P>
  std::optional<Pdu> operator()(const P&) const {
    return std::nullopt;  // response-type PDU arriving as a request
  }
};

}  // namespace

std::optional<RtuFrame> slave_handle(const RtuFrame& request, DataStore& store,
                                     SlaveAddress my_address) {
  bool broadcast = request.slave.is_broadcast();
  if (!broadcast && request.slave != my_address) return std::nullopt;
  auto response = std::visit(HandleRequest{store, broadcast}, request.pdu);
  if (!response) return std::nullopt;
  return RtuFrame{request.slave, std::move(*response)};
}

void SlaveEndpoint::poll(SimTime now) {
  while (auto frame = link_.receive()) {
    auto decoded = decode_adu(*frame, Role::Slave);
    if (decoded.ok()) {
      if (auto resp = slave_handle(decoded.value(), store_, opts_.address)) {
        link_.send(encode_adu(*resp));
      }
      if (decoded.value().slave == opts_.address || decoded.value().slave.is_broadcast())
        ++handled_;
      continue;
    }
    CodecError err = decoded.error();
    if (err == CodecError::CrcMismatch || err == CodecError::FrameTooShort) {
      // Checksum failure: stay silent, per RTU rules.
      ++dropped_;
      if (opts_.log.enabled(LogLevel::Debug)) {
        opts_.log.log(now, LogLevel::Debug, "modbus-drop",
                      {{"reason", to_string(err)}, {"frame", to_hex(*frame)}});
      }
      continue;
    }
    // CRC was valid, so the address and function bytes are trustworthy.
    // Answer structurally bad requests aimed at us with an exception.
    uint8_t addr = (*frame)[0];
    if (addr != opts_.address.value() || opts_.address.is_broadcast()) continue;
    uint8_t function = (*frame)[1] & 0x7F;
    ExceptionCode code = err == CodecError::UnknownFunction ? ExceptionCode::IllegalFunction
                                                            : ExceptionCode::IllegalDataValue;
    link_.send(encode_adu(RtuFrame{opts_.address, ExceptionPdu{function, code}}));
    if (opts_.log.enabled(LogLevel::Debug)) {
      opts_.log.log(now, LogLevel::Debug, "modbus-reject",
                    {{"reason", to_string(err)}, {"code", to_string(code)}});
    }
  }
}

}  // namespace plclink::modbus
