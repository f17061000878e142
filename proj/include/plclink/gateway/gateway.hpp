// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <functional>
#include <memory>

#include "plclink/core/event.hpp"
#include "plclink/core/log.hpp"
#include "plclink/gateway/config.hpp"
#include "plclink/modbus/master.hpp"
#include "plclink/mqtt/client.hpp"

namespace plclink::gateway {

// One bridge instance: FC03-polls its PLC, publishes register snapshots on
// change, and turns subscribed payloads into FC05/FC15 coil writes. Entirely
// poll-driven; the caller owns the serial transport and supplies a dialer
// that opens a fresh broker connection per attempt (reconnects use
// exponential backoff, 0.5 s doubling to 8 s).
class Gateway {
 public:
  // Returns a fresh transport toward the broker, or nullptr when dialing is
  // impossible right now.
  using MqttDialer = std::function<std::unique_ptr<ByteStream>()>;

  struct Counters {
    uint64_t polls = 0;           // FC03 transactions completed
    uint64_t poll_failures = 0;   // FC03 timeouts/exceptions
    uint64_t publishes = 0;
    uint64_t receives = 0;        // subscribed messages accepted
    uint64_t payload_errors = 0;  // dropped: wrong length
    uint64_t writes_ok = 0;
    uint64_t writes_lost = 0;     // write transaction failed after retries
    uint64_t reconnects = 0;      // broker sessions established
  };

  Gateway(GatewayConfig config, FrameTransport& serial, MqttDialer dial,
          EventSink* events = nullptr, Logger log = {});

  void poll(SimTime now);

  // Sends DISCONNECT when connected; the gateway stays usable (poll will
  // reconnect) unless the caller stops driving it.
  void shutdown(SimTime now);

  bool mqtt_ready() const { return session_ == Session::Ready; }
  const Counters& counters() const { return counters_; }
  const GatewayConfig& config() const { return config_; }

 private:
  enum class Session { Down, Connecting, Subscribing, Ready };
  enum class Txn { None, Poll, Write };

  void emit(SimTime now, std::string_view kind, std::string_view detail);
  void drive_mqtt(SimTime now);
  void on_mqtt_failure(SimTime now);
  void drain_messages(SimTime now);
  void drive_modbus(SimTime now);
  void complete_poll(SimTime now, const modbus::MasterResult& result);
  void complete_write(SimTime now, const modbus::MasterResult& result);

  GatewayConfig config_;
  modbus::MasterEndpoint master_;
  MqttDialer dial_;
  mqtt::MqttClient client_;
  EventSink* events_;
  Logger log_;

  Session session_ = Session::Down;
  SimTime next_dial_{0};
  SimDuration backoff_ = std::chrono::milliseconds(500);
  static constexpr SimDuration kMaxBackoff = std::chrono::seconds(8);

  Txn txn_ = Txn::None;
  std::deque<std::vector<bool>> write_queue_;
  std::optional<std::vector<uint16_t>> last_published_;
  SimTime next_poll_{0};
  Counters counters_;
};

}  // namespace plclink::gateway
