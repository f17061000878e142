// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/mqtt/broker.hpp"

#include <algorithm>

namespace plclink::mqtt {

namespace {

bool has_wildcard(const std::string& filter) {
  return filter.find_first_of("+#") != std::string::npos;
}

}  // namespace

void Broker::attach(std::unique_ptr<ByteStream> conn, SimTime now) {
  auto c = std::make_unique<Connection>();
  c->stream = std::move(conn);
  c->last_inbound = now;
  conns_.push_back(std::move(c));
  if (opts_.log.enabled(LogLevel::Debug)) {
    opts_.log.log(now, LogLevel::Debug, "broker-attach", {});
  }
}

void Broker::drop(Connection& conn, const char* reason, SimTime now) {
  if (conn.closing) return;
  conn.closing = true;
  conn.stream->close();
  if (opts_.log.enabled(LogLevel::Info)) {
    opts_.log.log(now, LogLevel::Info, "broker-drop",
                  {{"client", conn.client_id}, {"reason", std::string(reason)}});
  }
}

void Broker::route(const Publish& publish, SimTime now) {
  ++stats_.publishes;
  if (publish.retain) {
    ++stats_.retained_ignored;
    if (opts_.log.enabled(LogLevel::Warn)) {
      opts_.log.log(now, LogLevel::Warn, "broker-retain-ignored", {{"topic", publish.topic}});
    }
  }
  Publish out = publish;
  out.retain = false;  // no retained-message store; never forwarded set
  out.dup = false;
  auto encoded = encode_packet(MqttPacket{out});
  size_t delivered = 0;
  for (auto& c : conns_) {
    if (!c->connected || c->closing) continue;
    if (c->subscriptions.count(publish.topic) == 0) continue;
    c->stream->write(encoded);
    ++delivered;
    ++stats_.routed;
  }
  if (delivered == 0) ++stats_.dropped_no_subscriber;
  if (opts_.log.enabled(LogLevel::Debug)) {
    opts_.log.log(now, LogLevel::Debug, "broker-route",
                  {{"topic", publish.topic},
                   {"bytes", std::to_string(publish.payload.size())},
                   {"delivered", std::to_string(delivered)}});
  }
}

void Broker::handle_packet(Connection& conn, const MqttPacket& packet, SimTime now) {
  if (const auto* p = std::get_if<Connect>(&packet)) {
    if (conn.connected) {
      drop(conn, "second-connect", now);
      return;
    }
    if (p->client_id.empty()) {
      conn.stream->write(encode_packet(MqttPacket{Connack{2}}));  // identifier rejected
      drop(conn, "empty-client-id", now);
      return;
    }
    for (auto& other : conns_) {
      if (other.get() != &conn && other->connected && other->client_id == p->client_id) {
        ++stats_.takeovers;
        drop(*other, "takeover", now);
      }
    }
    conn.client_id = p->client_id;
    conn.keepalive = p->keepalive;
    conn.connected = true;
    ++stats_.connects;
    conn.stream->write(encode_packet(MqttPacket{Connack{0}}));
    if (opts_.log.enabled(LogLevel::Info)) {
      opts_.log.log(now, LogLevel::Info, "broker-connect",
                    {{"client", conn.client_id},
                     {"keepalive", std::to_string(conn.keepalive)}});
    }
    return;
  }

  if (!conn.connected) {
    drop(conn, "packet-before-connect", now);
    return;
  }

  if (const auto* p = std::get_if<Publish>(&packet)) {
    route(*p, now);
  } else if (const auto* p = std::get_if<Subscribe>(&packet)) {
    Suback ack;
    ack.packet_id = p->packet_id;
    for (const auto& filter : p->filters) {
      if (has_wildcard(filter)) {
        ++stats_.wildcard_rejected;
        ack.granted.push_back(0x80);
        if (opts_.log.enabled(LogLevel::Warn)) {
          opts_.log.log(now, LogLevel::Warn, "broker-wildcard-rejected", {{"filter", filter}});
        }
      } else {
        conn.subscriptions.insert(filter);
        ack.granted.push_back(0x00);
      }
    }
    conn.stream->write(encode_packet(MqttPacket{ack}));
    if (opts_.log.enabled(LogLevel::Info)) {
      opts_.log.log(now, LogLevel::Info, "broker-subscribe",
                    {{"client", conn.client_id},
                     {"filters", std::to_string(p->filters.size())}});
    }
  } else if (std::holds_alternative<Pingreq>(packet)) {
    ++stats_.pings;
    conn.stream->write(encode_packet(MqttPacket{Pingresp{}}));
  } else if (std::holds_alternative<Disconnect>(packet)) {
    drop(conn, "disconnect", now);
  } else {
    // CONNACK/SUBACK/PINGRESP have no business arriving at the broker.
    drop(conn, "unexpected-packet", now);
  }
}

void Broker::poll(SimTime now) {
  for (auto& c : conns_) {
    if (c->closing) continue;

    uint8_t buf[1024];
    for (size_t n; (n = c->stream->read(std::span(buf))) > 0;) {
      c->rx.insert(c->rx.end(), buf, buf + n);
      c->last_inbound = now;
    }

    while (!c->closing && !c->rx.empty()) {
      auto decoded = decode_packet(c->rx);
      if (!decoded.ok()) {
        if (decoded.error() == MqttCodecError::NeedMoreBytes) break;
        drop(*c, to_string(decoded.error()), now);
        break;
      }
      c->rx.erase(c->rx.begin(), c->rx.begin() + decoded.value().consumed);
      handle_packet(*c, decoded.value().packet, now);
    }

    if (!c->closing && c->stream->state() == StreamState::Closed) {
      drop(*c, "connection-lost", now);
    }
    if (!c->closing && c->connected && c->keepalive > 0) {
      auto limit = std::chrono::seconds(c->keepalive) * 3 / 2;
      if (now - c->last_inbound > limit) drop(*c, "keepalive-expired", now);
    }
    if (!c->closing && !c->connected && now - c->last_inbound > std::chrono::seconds(30)) {
      drop(*c, "connect-timeout", now);
    }
  }

  std::erase_if(conns_, [](const auto& c) { return c->closing; });
}

size_t Broker::session_count() const {
  return static_cast<size_t>(std::count_if(conns_.begin(), conns_.end(), [](const auto& c) {
    return c->connected && !c->closing;
  }));
}

bool Broker::has_session(const std::string& client_id) const {
  return std::any_of(conns_.begin(), conns_.end(), [&](const auto& c) {
    return c->connected && !c->closing && c->client_id == client_id;
  });
}

}  // namespace plclink::mqtt
