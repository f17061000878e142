// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>

#include "plclink/core/log.hpp"
#include "plclink/modbus/adu.hpp"
#include "plclink/modbus/serial.hpp"
#include "plclink/transport/stream.hpp"

namespace plclink::modbus {

enum class MasterOutcome {
  Ok,
  BroadcastDone,       // sent, no response expected
  Timeout,             // all attempts exhausted without a usable response
  ExceptionReturned,   // slave answered with an exception PDU
  AddressMismatch,     // responses kept arriving from the wrong station
};

const char* to_string(MasterOutcome outcome);

struct MasterResult {
  MasterOutcome outcome = MasterOutcome::Timeout;
  std::optional<Pdu> response;             // set when outcome == Ok
  std::optional<ExceptionCode> exception;  // set when outcome == ExceptionReturned
  uint32_t attempts = 0;

  bool ok() const {
    return outcome == MasterOutcome::Ok || outcome == MasterOutcome::BroadcastDone;
  }
};

// Polled master endpoint: one transaction in flight at a time. A failed
// attempt (timeout, CRC-invalid response, wrong station) is retried up to
// timing.retries times with the inter-frame delay between sends.
class MasterEndpoint {
 public:
  MasterEndpoint(FrameTransport& link, MasterTiming timing, Logger log = {})
      : link_(link), timing_(timing), log_(log) {}

  bool idle() const { return state_ == State::Idle; }

  // Starts a transaction; returns false if one is already in flight.
  bool submit(const RtuFrame& request, SimTime now);

  // Drives the transaction; returns the result on the poll that completes it.
  std::optional<MasterResult> poll(SimTime now);

  const MasterTiming& timing() const { return timing_; }

 private:
  enum class State { Idle, Sending, Waiting };

  std::optional<MasterResult> fail_attempt(SimTime now, MasterOutcome kind);
  MasterResult finish(SimTime now, MasterResult result);

  FrameTransport& link_;
  MasterTiming timing_;
  Logger log_;
  State state_ = State::Idle;
  std::vector<uint8_t> encoded_;
  SlaveAddress expect_slave_;
  uint8_t expect_function_ = 0;
  bool broadcast_ = false;
  uint32_t attempts_ = 0;
  SimTime not_before_{0};
  SimTime deadline_{0};
};

// Blocking convenience driver: submits `request` and polls to completion,
// sleeping `clock` between polls and calling `idle` (if given) so in-process
// peers can make progress.
MasterResult master_execute(MasterEndpoint& master, const RtuFrame& request, Clock& clock,
                            const std::function<void()>& idle = {});

}  // namespace plclink::modbus
