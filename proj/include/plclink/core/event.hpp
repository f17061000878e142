// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "plclink/core/time.hpp"

namespace plclink {

// One line of the machine-checkable scenario trace. `seq` is a global
// monotonic counter assigned by the collector; it totally orders events even
// when several occur on the same tick.
struct TraceEvent {
  uint32_t cycle = 0;
  uint64_t seq = 0;
  SimTime ts{0};
  std::string actor;
  std::string kind;
  std::string detail;
};

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void emit(SimTime ts, std::string_view actor, std::string_view kind,
                    std::string_view detail) = 0;
};

}  // namespace plclink
