// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "plclink/core/event.hpp"

namespace plclink::plant {

// Collects trace events, stamping each with a global sequence number and the
// handshake cycle it belongs to (a plc1 restart closes the cycle).
class EventCollector final : public EventSink {
 public:
  void emit(SimTime ts, std::string_view actor, std::string_view kind,
            std::string_view detail) override;

  const std::vector<TraceEvent>& events() const { return events_; }
  std::vector<TraceEvent> take() { return std::move(events_); }
  uint64_t next_seq() const { return seq_; }

 private:
  std::vector<TraceEvent> events_;
  uint64_t seq_ = 0;
  uint32_t cycle_ = 1;
};

// Ordering rules over a recorded trace:
//  (a) the i-th plc2 sequence start strictly follows the i-th plc1 flag-set;
//  (b) the i-th plc1 restart strictly follows the i-th flag-m9 and flag-m11;
//  (c) per gateway, change and publish events strictly alternate, starting
//      with a change (no publish without a detected change).
// Returns human-readable violations; empty means the trace is well-ordered.
std::vector<std::string> check_event_order(const std::vector<TraceEvent>& events);

std::string format_event(const TraceEvent& event);

}  // namespace plclink::plant
