// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace plclink::plant {

// A stepper motor reduced to a countdown timer: `duration` scan ticks of
// running, then done until reset.
struct Motor {
  enum class State { Idle, Running, Done };

  int id = 0;
  uint32_t duration = 1;  // ticks; >= 1
  State state = State::Idle;
  uint32_t remaining = 0;

  void start() {
    state = State::Running;
    remaining = duration;
  }

  // One scan tick; returns true on the tick the motor completes.
  bool tick() {
    if (state != State::Running) return false;
    if (--remaining == 0) {
      state = State::Done;
      return true;
    }
    return false;
  }

  void reset() {
    state = State::Idle;
    remaining = 0;
  }

  bool done() const { return state == State::Done; }
};

}  // namespace plclink::plant
