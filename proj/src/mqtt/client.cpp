// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/mqtt/client.hpp"

namespace plclink::mqtt {

void MqttClient::fail(Failure f, SimTime now) {
  state_ = State::Failed;
  failure_ = f;
  subscribe_pending_ = false;
  if (stream_) stream_->close();
  stream_.reset();
  if (opts_.log.enabled(LogLevel::Warn)) {
    opts_.log.log(now, LogLevel::Warn, "mqtt-failed",
                  {{"client", opts_.client_id}, {"code", std::to_string(static_cast<int>(f))}});
  }
}

void MqttClient::send(const MqttPacket& packet, SimTime now) {
  stream_->write(encode_packet(packet));
  last_outbound_ = now;
}

void MqttClient::begin_connect(std::unique_ptr<ByteStream> conn, SimTime now) {
  stream_ = std::move(conn);
  rx_.clear();
  failure_ = Failure::None;
  subscribe_pending_ = false;
  subscribe_result_.reset();
  if (!stream_ || stream_->state() == StreamState::Closed) {
    fail(Failure::BrokerUnreachable, now);
    return;
  }
  state_ = State::Connecting;
  connack_deadline_ = now + opts_.connack_timeout;
  last_inbound_ = now;
  // The transport buffers this while its own connect is still in flight.
  send(MqttPacket{Connect{opts_.client_id, opts_.keepalive, opts_.clean_session}}, now);
}

void MqttClient::handle_packet(const MqttPacket& packet, SimTime now) {
  if (const auto* p = std::get_if<Connack>(&packet)) {
    if (state_ != State::Connecting) return;
    connack_code_ = p->return_code;
    if (p->return_code == 0) {
      state_ = State::Connected;
      if (opts_.log.enabled(LogLevel::Info)) {
        opts_.log.log(now, LogLevel::Info, "mqtt-connected", {{"client", opts_.client_id}});
      }
    } else {
      fail(Failure::ConnackRefused, now);
    }
    return;
  }
  if (const auto* p = std::get_if<Publish>(&packet)) {
    inbox_.emplace_back(p->topic, p->payload);
    return;
  }
  if (const auto* p = std::get_if<Suback>(&packet)) {
    if (subscribe_pending_ && !p->granted.empty()) {
      subscribe_result_ = p->granted[0];
      subscribe_pending_ = false;
    }
    return;
  }
  // PINGRESP refreshes last_inbound_ like everything else; other packet
  // types are not expected from a broker and are ignored.
}

void MqttClient::poll(SimTime now) {
  if (!stream_) return;

  uint8_t buf[1024];
  for (size_t n; (n = stream_->read(std::span(buf))) > 0;) {
    rx_.insert(rx_.end(), buf, buf + n);
    last_inbound_ = now;
  }

  while (!rx_.empty() && stream_) {
    auto decoded = decode_packet(rx_);
    if (!decoded.ok()) {
      if (decoded.error() == MqttCodecError::NeedMoreBytes) break;
      fail(state_ == State::Connecting ? Failure::Timeout : Failure::ConnectionLost, now);
      return;
    }
    rx_.erase(rx_.begin(), rx_.begin() + decoded.value().consumed);
    handle_packet(decoded.value().packet, now);
    if (state_ == State::Failed) return;
  }

  if (state_ == State::Connecting) {
    if (stream_->state() == StreamState::Closed) {
      fail(Failure::BrokerUnreachable, now);
      return;
    }
    if (now >= connack_deadline_) {
      fail(Failure::Timeout, now);
      return;
    }
  }

  if (state_ == State::Connected) {
    if (stream_->state() == StreamState::Closed) {
      fail(Failure::ConnectionLost, now);
      return;
    }
    if (opts_.keepalive > 0) {
      auto keepalive = std::chrono::duration_cast<SimDuration>(std::chrono::seconds(opts_.keepalive));
      if (now - last_inbound_ > keepalive * 3 / 2) {
        fail(Failure::ConnectionLost, now);
        return;
      }
      if (now - last_outbound_ >= keepalive) {
        send(MqttPacket{Pingreq{}}, now);
        ++pings_sent_;
      }
    }
  }
}

bool MqttClient::publish(const std::string& topic, std::span<const uint8_t> payload, SimTime now) {
  if (state_ != State::Connected) return false;
  Publish p;
  p.topic = topic;
  p.payload.assign(payload.begin(), payload.end());
  send(MqttPacket{p}, now);
  return true;
}

bool MqttClient::begin_subscribe(const std::string& filter, SimTime now) {
  if (state_ != State::Connected || subscribe_pending_) return false;
  Subscribe s;
  s.packet_id = next_packet_id_++;
  if (next_packet_id_ == 0) next_packet_id_ = 1;
  s.filters.push_back(filter);
  subscribe_pending_ = true;
  subscribe_result_.reset();
  send(MqttPacket{s}, now);
  return true;
}

std::optional<uint8_t> MqttClient::take_subscribe_result() {
  auto r = subscribe_result_;
  subscribe_result_.reset();
  return r;
}

std::vector<std::pair<std::string, std::vector<uint8_t>>> MqttClient::take_messages() {
  return std::exchange(inbox_, {});
}

void MqttClient::disconnect(SimTime now) {
  if (stream_ && state_ == State::Connected) {
    send(MqttPacket{Disconnect{}}, now);
  }
  if (stream_) stream_->close();
  stream_.reset();
  state_ = State::Disconnected;
  failure_ = Failure::None;
  subscribe_pending_ = false;
  if (opts_.log.enabled(LogLevel::Info)) {
    opts_.log.log(now, LogLevel::Info, "mqtt-disconnected", {{"client", opts_.client_id}});
  }
}

}  // namespace plclink::mqtt
