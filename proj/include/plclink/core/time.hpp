// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <thread>

namespace plclink {

// All runtime components are driven by an explicit notion of elapsed time
// since the start of the run, in microseconds. Deterministic runs advance a
// logical clock; live runs read the steady clock.
using SimTime = std::chrono::microseconds;
using SimDuration = std::chrono::microseconds;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual SimTime now() = 0;
  virtual void sleep(SimDuration) {}
};

class LogicalClock final : public Clock {
 public:
  SimTime now() override { return t_; }
  void advance(SimDuration d) { t_ += d; }

  // Sleeping on a logical clock just declares that the time passed.
  void sleep(SimDuration d) override { advance(d); }

 private:
  SimTime t_{0};
};

class WallClock final : public Clock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}

  SimTime now() override {
    return std::chrono::duration_cast<SimTime>(std::chrono::steady_clock::now() - start_);
  }

  void sleep(SimDuration d) override { std::this_thread::sleep_for(d); }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace plclink
