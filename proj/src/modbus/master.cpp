// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/modbus/master.hpp"

#include <cassert>

namespace plclink::modbus {

const char* to_string(MasterOutcome outcome) {
  switch (outcome) {
    case MasterOutcome::Ok: return "ok";
    case MasterOutcome::BroadcastDone: return "broadcast-done";
    case MasterOutcome::Timeout: return "timeout";
    case MasterOutcome::ExceptionReturned: return "exception-returned";
    case MasterOutcome::AddressMismatch: return "address-mismatch";
  }
  return "unknown";
}

bool MasterEndpoint::submit(const RtuFrame& request, SimTime now) {
  if (state_ != State::Idle) return false;
  assert(is_request(request.pdu));
  encoded_ = encode_adu(request);
  expect_slave_ = request.slave;
  expect_function_ = wire_function(request.pdu);
  broadcast_ = request.slave.is_broadcast();
  attempts_ = 0;
  state_ = State::Sending;
  if (not_before_ < now) not_before_ = now;
  return true;
}

MasterResult MasterEndpoint::finish(SimTime now, MasterResult result) {
  state_ = State::Idle;
  not_before_ = now + timing_.inter_frame_delay;
  result.attempts = attempts_;
  if (log_.enabled(LogLevel::Debug)) {
    log_.log(now, LogLevel::Debug, "modbus-txn",
             {{"outcome", to_string(result.outcome)},
              {"attempts", std::to_string(result.attempts)}});
  }
  return result;
}

std::optional<MasterResult> MasterEndpoint::fail_attempt(SimTime now, MasterOutcome kind) {
  if (attempts_ > timing_.retries) {
    return finish(now, MasterResult{kind, std::nullopt, std::nullopt, 0});
  }
  state_ = State::Sending;
  not_before_ = now + timing_.inter_frame_delay;
  return std::nullopt;
}

std::optional<MasterResult> MasterEndpoint::poll(SimTime now) {
  if (state_ == State::Sending) {
    if (now < not_before_) return std::nullopt;
    // Anything still queued from an earlier attempt is stale by definition.
    while (link_.receive()) {
    }
    link_.send(encoded_);
    ++attempts_;
    if (broadcast_) {
      return finish(now, MasterResult{MasterOutcome::BroadcastDone, std::nullopt, std::nullopt, 0});
    }
    deadline_ = now + timing_.response_timeout;
    state_ = State::Waiting;
    return std::nullopt;
  }

  if (state_ != State::Waiting) return std::nullopt;

  while (auto frame = link_.receive()) {
    auto decoded = decode_adu(*frame, Role::Master);
    if (!decoded.ok()) {
      return fail_attempt(now, MasterOutcome::Timeout);
    }
    const RtuFrame& f = decoded.value();
    if (f.slave != expect_slave_) {
      return fail_attempt(now, MasterOutcome::AddressMismatch);
    }
    if (const auto* exc = std::get_if<ExceptionPdu>(&f.pdu)) {
      return finish(now, MasterResult{MasterOutcome::ExceptionReturned, std::nullopt, exc->code, 0});
    }
    if (wire_function(f.pdu) != expect_function_) {
      return fail_attempt(now, MasterOutcome::Timeout);
    }
    return finish(now, MasterResult{MasterOutcome::Ok, f.pdu, std::nullopt, 0});
  }

  if (now >= deadline_) {
    return fail_attempt(now, MasterOutcome::Timeout);
  }
  return std::nullopt;
}

MasterResult master_execute(MasterEndpoint& master, const RtuFrame& request, Clock& clock,
                            const std::function<void()>& idle) {
  bool accepted = master.submit(request, clock.now());
  assert(accepted);
  (void)accepted;
  for (;;) {
    if (auto result = master.poll(clock.now())) return *result;
    if (idle) idle();
    clock.sleep(std::chrono::microseconds(100));
  }
}

}  // namespace plclink::modbus
