// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plclink/core/log.hpp"
#include "plclink/mqtt/packet.hpp"
#include "plclink/transport/stream.hpp"

namespace plclink::mqtt {

// Poll-driven QoS-0 client session. The caller supplies a fresh transport
// per connection attempt; the client owns it until it fails or disconnects.
// Keepalive pings are emitted from poll(); the broker is declared lost after
// 1.5 x keepalive without inbound traffic.
class MqttClient {
 public:
  enum class State { Disconnected, Connecting, Connected, Failed };
  enum class Failure {
    None,
    BrokerUnreachable,  // transport never came up
    ConnackRefused,     // CONNACK with nonzero return code
    Timeout,            // no CONNACK inside the window
    ConnectionLost,     // transport died or keepalive expired mid-session
  };

  struct Options {
    std::string client_id;
    uint16_t keepalive = 60;  // seconds; 0 disables pinging
    bool clean_session = true;
    SimDuration connack_timeout = std::chrono::seconds(5);
    Logger log{};
  };

  explicit MqttClient(Options opts) : opts_(std::move(opts)) {}

  // Takes ownership of `conn` and starts the CONNECT handshake. Resets any
  // previous failure state.
  void begin_connect(std::unique_ptr<ByteStream> conn, SimTime now);

  void poll(SimTime now);

  State state() const { return state_; }
  Failure failure() const { return failure_; }
  uint8_t connack_code() const { return connack_code_; }

  // All of the below require state() == Connected and return false otherwise.
  bool publish(const std::string& topic, std::span<const uint8_t> payload, SimTime now);
  bool begin_subscribe(const std::string& filter, SimTime now);
  bool subscribe_pending() const { return subscribe_pending_; }
  // Granted-qos byte (0x80 = refused) from the last completed subscribe;
  // consumed on read.
  std::optional<uint8_t> take_subscribe_result();

  std::vector<std::pair<std::string, std::vector<uint8_t>>> take_messages();

  // Sends DISCONNECT (when connected) and closes; state -> Disconnected.
  void disconnect(SimTime now);

  uint64_t pings_sent() const { return pings_sent_; }

 private:
  void fail(Failure f, SimTime now);
  void handle_packet(const MqttPacket& packet, SimTime now);
  void send(const MqttPacket& packet, SimTime now);

  Options opts_;
  std::unique_ptr<ByteStream> stream_;
  std::vector<uint8_t> rx_;
  State state_ = State::Disconnected;
  Failure failure_ = Failure::None;
  uint8_t connack_code_ = 0;
  uint16_t next_packet_id_ = 1;
  bool subscribe_pending_ = false;
  std::optional<uint8_t> subscribe_result_;
  std::vector<std::pair<std::string, std::vector<uint8_t>>> inbox_;
  SimTime connack_deadline_{0};
  SimTime last_inbound_{0};
  SimTime last_outbound_{0};
  uint64_t pings_sent_ = 0;
};

}  // namespace plclink::mqtt
