// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "plclink/core/log.hpp"
#include "plclink/modbus/adu.hpp"
#include "plclink/modbus/data_store.hpp"
#include "plclink/transport/stream.hpp"

namespace plclink::modbus {

// Pure request handler. Returns the response frame, or nothing when the
// request is addressed elsewhere or is a broadcast (writes are still
// applied to the store in the broadcast case).
std::optional<RtuFrame> slave_handle(const RtuFrame& request, DataStore& store,
                                     SlaveAddress my_address);

// Polled slave endpoint over a boundary-framed transport. A frame that fails
// the CRC (or is too short to carry one) is discarded without any response
// bytes; structurally bad frames with a valid CRC get an exception response
// when addressed to us.
class SlaveEndpoint {
 public:
  struct Options {
    SlaveAddress address;
    Logger log{};
  };

  SlaveEndpoint(FrameTransport& link, DataStore& store, Options opts)
      : link_(link), store_(store), opts_(opts) {}

  void poll(SimTime now);

  uint64_t dropped_frames() const { return dropped_; }
  uint64_t handled_requests() const { return handled_; }
  SlaveAddress address() const { return opts_.address; }

 private:
  FrameTransport& link_;
  DataStore& store_;
  Options opts_;
  uint64_t dropped_ = 0;
  uint64_t handled_ = 0;
};

}  // namespace plclink::modbus
