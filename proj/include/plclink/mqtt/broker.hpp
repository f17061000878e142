// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "plclink/core/log.hpp"
#include "plclink/mqtt/packet.hpp"
#include "plclink/transport/stream.hpp"

namespace plclink::mqtt {

// Minimal QoS-0 broker. Transport-agnostic: callers attach one ByteStream
// per client connection (from a TCP listener or an in-memory link) and call
// poll() to drive all sessions. Routing is exact-match on topic names;
// wildcard filters are refused at SUBSCRIBE time. Single-threaded.
class Broker {
 public:
  struct Options {
    Logger log{};
  };

  struct Stats {
    uint64_t connects = 0;
    uint64_t takeovers = 0;
    uint64_t publishes = 0;
    uint64_t routed = 0;
    uint64_t dropped_no_subscriber = 0;
    uint64_t retained_ignored = 0;
    uint64_t wildcard_rejected = 0;
    uint64_t pings = 0;
  };

  Broker() : Broker(Options{}) {}
  explicit Broker(Options opts) : opts_(std::move(opts)) {}

  void attach(std::unique_ptr<ByteStream> conn, SimTime now);
  void poll(SimTime now);

  size_t session_count() const;  // connected sessions only
  bool has_session(const std::string& client_id) const;
  const Stats& stats() const { return stats_; }

 private:
  struct Connection {
    std::unique_ptr<ByteStream> stream;
    std::vector<uint8_t> rx;
    std::string client_id;
    bool connected = false;
    bool closing = false;
    uint16_t keepalive = 0;
    SimTime last_inbound{0};
    std::set<std::string> subscriptions;
  };

  void handle_packet(Connection& conn, const MqttPacket& packet, SimTime now);
  void route(const Publish& publish, SimTime now);
  void drop(Connection& conn, const char* reason, SimTime now);

  Options opts_;
  Stats stats_;
  std::vector<std::unique_ptr<Connection>> conns_;
};

}  // namespace plclink::mqtt
