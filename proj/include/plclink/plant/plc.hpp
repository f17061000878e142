// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

#include "plclink/core/event.hpp"
#include "plclink/modbus/data_store.hpp"
#include "plclink/plant/motor.hpp"

namespace plclink::plant {

// Default per-motor run times in scan ticks.
const std::map<int, uint32_t>& default_motor_ticks();

// Controller 1: runs motors 1-5 in parallel, raises the done-flag in
// holding register 0, then waits for both peer coils (motors 9 and 11 home)
// to rise before clearing the flag and starting over. Coil edges are
// latched, so the two acknowledgements may arrive on different scans.
// After clearing the flag it holds off restarting the motors until both
// coils have returned low; every level in the handshake is held until the
// peer reacts, so polling bridges cannot miss a transition.
class Plc1Program {
 public:
  Plc1Program(modbus::DataStore& store, std::map<int, uint32_t> motor_ticks,
              EventSink* events = nullptr);

  void scan(SimTime now);

  uint32_t cycles_completed() const { return cycles_; }
  const std::vector<Motor>& motors() const { return motors_; }

 private:
  enum class Phase { RunMotors, WaitPeers, WaitAcksLow };

  modbus::DataStore& store_;
  EventSink* events_;
  std::vector<Motor> motors_;  // ids 1-5
  Phase phase_ = Phase::RunMotors;
  bool motors_started_ = false;
  bool last_c0_ = false, last_c1_ = false;
  bool latched_c0_ = false, latched_c1_ = false;
  uint32_t cycles_ = 0;
};

// Controller 2: waits for a rising edge on coil 0 (peer's done-flag), runs
// motors 6-12, raises register 0 when motor 9 completes and register 1 when
// motor 11 completes, then waits for coil 0 to go low before clearing both
// registers and re-arming.
class Plc2Program {
 public:
  Plc2Program(modbus::DataStore& store, std::map<int, uint32_t> motor_ticks,
              EventSink* events = nullptr);

  void scan(SimTime now);

  uint32_t starts() const { return starts_; }
  const std::vector<Motor>& motors() const { return motors_; }

 private:
  enum class Phase { Idle, RunMotors, WaitReset };

  modbus::DataStore& store_;
  EventSink* events_;
  std::vector<Motor> motors_;  // ids 6-12
  Phase phase_ = Phase::Idle;
  bool motors_started_ = false;
  bool last_c0_ = false;
  uint32_t starts_ = 0;
};

}  // namespace plclink::plant
