// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "plclink/transport/tcp.hpp"

namespace plclink {

// Server side of a serial-over-TCP segment: accepts one peer at a time and
// exposes it as a frame transport. A newly accepted connection replaces the
// previous one (the master reconnected).
class SingleClientFrameServer final : public FrameTransport {
 public:
  explicit SingleClientFrameServer(std::unique_ptr<TcpListener> listener)
      : listener_(std::move(listener)) {}

  uint16_t port() const { return listener_ ? listener_->port() : 0; }

  bool send(std::span<const uint8_t> frame) override {
    accept_pending();
    return conn_ && conn_->send(frame);
  }

  std::optional<std::vector<uint8_t>> receive() override {
    accept_pending();
    if (!conn_) return std::nullopt;
    return conn_->receive();
  }

  bool up() override { return listener_ != nullptr; }

  void close() override {
    if (conn_) conn_->close();
    conn_.reset();
    listener_.reset();
  }

 private:
  void accept_pending() {
    if (!listener_) return;
    if (conn_ && !conn_->up()) conn_.reset();
    while (auto stream = listener_->accept()) {
      conn_ = std::make_unique<StreamFrameTransport>(std::move(stream));
    }
  }

  std::unique_ptr<TcpListener> listener_;
  std::unique_ptr<StreamFrameTransport> conn_;
};

}  // namespace plclink
