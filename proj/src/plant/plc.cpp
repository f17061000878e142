// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/plant/plc.hpp"

#include <algorithm>

namespace plclink::plant {

namespace {

std::vector<Motor> build_motors(int first_id, int last_id,
                                const std::map<int, uint32_t>& ticks) {
  std::vector<Motor> out;
  for (int id = first_id; id <= last_id; ++id) {
    auto it = ticks.find(id);
    uint32_t d = it != ticks.end() ? std::max<uint32_t>(1, it->second) : 1;
    out.push_back(Motor{id, d});
  }
  return out;
}

bool all_done(const std::vector<Motor>& motors) {
  return std::all_of(motors.begin(), motors.end(), [](const Motor& m) { return m.done(); });
}

}  // namespace

const std::map<int, uint32_t>& default_motor_ticks() {
  static const std::map<int, uint32_t> ticks = {{1, 8},  {2, 6},  {3, 10}, {4, 7},
                                                {5, 12}, {6, 9},  {7, 6},  {8, 11},
                                                {9, 14}, {10, 8}, {11, 18}, {12, 10}};
  return ticks;
}

Plc1Program::Plc1Program(modbus::DataStore& store, std::map<int, uint32_t> motor_ticks,
                         EventSink* events)
    : store_(store), events_(events), motors_(build_motors(1, 5, motor_ticks)) {}

void Plc1Program::scan(SimTime now) {
  switch (phase_) {
    case Phase::RunMotors: {
      if (!motors_started_) {
        for (auto& m : motors_) m.start();
        motors_started_ = true;
        return;
      }
      for (auto& m : motors_) m.tick();
      if (all_done(motors_)) {
        store_.set_reg(0, 1);
        if (events_) events_->emit(now, "plc1", "flag-set", "reg0=1");
        // Prime the edge memory with the coils as they stand now, so a value
        // left high from the previous cycle cannot fake an acknowledgement.
        last_c0_ = store_.coil(0);
        last_c1_ = store_.coil(1);
        latched_c0_ = latched_c1_ = false;
        phase_ = Phase::WaitPeers;
      }
      return;
    }
    case Phase::WaitPeers: {
      bool c0 = store_.coil(0);
      bool c1 = store_.coil(1);
      if (c0 && !last_c0_) latched_c0_ = true;
      if (c1 && !last_c1_) latched_c1_ = true;
      last_c0_ = c0;
      last_c1_ = c1;
      if (latched_c0_ && latched_c1_) {
        store_.set_reg(0, 0);
        ++cycles_;
        if (events_) events_->emit(now, "plc1", "restart", "cycle=" + std::to_string(cycles_));
        phase_ = Phase::WaitAcksLow;
      }
      return;
    }
    case Phase::WaitAcksLow: {
      // Keep the flag low until both acknowledgements have fallen. The low
      // level is held as long as it takes, so a slow poll cycle on the bridge
      // still observes it before the next run can raise the flag again.
      if (!store_.coil(0) && !store_.coil(1)) {
        for (auto& m : motors_) m.reset();
        motors_started_ = false;
        phase_ = Phase::RunMotors;
      }
      return;
    }
  }
}

Plc2Program::Plc2Program(modbus::DataStore& store, std::map<int, uint32_t> motor_ticks,
                         EventSink* events)
    : store_(store), events_(events), motors_(build_motors(6, 12, motor_ticks)) {}

void Plc2Program::scan(SimTime now) {
  switch (phase_) {
    case Phase::Idle: {
      bool c0 = store_.coil(0);
      bool rising = c0 && !last_c0_;
      last_c0_ = c0;
      if (rising) {
        ++starts_;
        if (events_) events_->emit(now, "plc2", "start", "cycle=" + std::to_string(starts_));
        motors_started_ = false;
        phase_ = Phase::RunMotors;
      }
      return;
    }
    case Phase::RunMotors: {
      if (!motors_started_) {
        for (auto& m : motors_) m.start();
        motors_started_ = true;
        return;
      }
      for (auto& m : motors_) {
        bool completed = m.tick();
        if (!completed) continue;
        if (m.id == 9) {
          store_.set_reg(0, 1);
          if (events_) events_->emit(now, "plc2", "flag-m9", "reg0=1");
        } else if (m.id == 11) {
          store_.set_reg(1, 1);
          if (events_) events_->emit(now, "plc2", "flag-m11", "reg1=1");
        }
      }
      if (all_done(motors_)) phase_ = Phase::WaitReset;
      return;
    }
    case Phase::WaitReset: {
      // Level check, not an edge: if the peer's flag already fell while the
      // motors were finishing, re-arm immediately instead of hanging.
      if (!store_.coil(0)) {
        store_.set_reg(0, 0);
        store_.set_reg(1, 0);
        for (auto& m : motors_) m.reset();
        if (events_) events_->emit(now, "plc2", "reset", "");
        last_c0_ = false;
        phase_ = Phase::Idle;
      }
      return;
    }
  }
}

}  // namespace plclink::plant
