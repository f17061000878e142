// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "plclink/core/result.hpp"
#include "plclink/core/time.hpp"
#include "plclink/transport/stream.hpp"

namespace plclink {

// Non-blocking TCP byte stream. dial() starts an asynchronous connect; the
// stream reports Connecting until the handshake resolves. Writes are fully
// buffered internally, so callers never lose bytes to a full socket buffer.
class TcpStream final : public ByteStream {
 public:
  static std::unique_ptr<TcpStream> dial(const std::string& host, uint16_t port);
  static std::unique_ptr<TcpStream> from_fd(int fd);  // accepted connection
  ~TcpStream() override;

  size_t write(std::span<const uint8_t> bytes) override;
  size_t read(std::span<uint8_t> out) override;
  StreamState state() override;
  void close() override;

 private:
  explicit TcpStream(int fd, bool connecting);
  void flush_tx();
  void resolve_connect();

  int fd_;
  bool connecting_;
  bool closed_ = false;
  std::vector<uint8_t> tx_;
};

class TcpListener {
 public:
  // host may be an IPv4 address or name resolvable locally; port 0 binds an
  // ephemeral port (see port()).
  static Result<std::unique_ptr<TcpListener>, std::string> bind(const std::string& host,
                                                                uint16_t port);
  ~TcpListener();

  std::unique_ptr<TcpStream> accept();
  uint16_t port() const { return port_; }

 private:
  TcpListener(int fd, uint16_t port) : fd_(fd), port_(port) {}
  int fd_;
  uint16_t port_;
};

// True if the host name can be resolved at all; lets callers fail fast on
// configuration errors rather than retrying a hopeless dial forever.
bool host_resolvable(const std::string& host);

// Frame transport over a byte stream using a 2-byte big-endian length
// prefix. Used to carry pre-delimited serial frames across local sockets.
class StreamFrameTransport final : public FrameTransport {
 public:
  explicit StreamFrameTransport(std::unique_ptr<ByteStream> stream)
      : stream_(std::move(stream)) {}

  bool send(std::span<const uint8_t> frame) override;
  std::optional<std::vector<uint8_t>> receive() override;
  bool up() override;
  void close() override;

 private:
  std::unique_ptr<ByteStream> stream_;
  std::vector<uint8_t> rx_;
};

// Frame transport that dials host:port lazily and re-dials with a fixed
// backoff after the connection drops. send() while down reports failure.
class ReconnectingFrameClient final : public FrameTransport {
 public:
  ReconnectingFrameClient(std::string host, uint16_t port, Clock& clock,
                          SimDuration backoff = std::chrono::milliseconds(500));

  bool send(std::span<const uint8_t> frame) override;
  std::optional<std::vector<uint8_t>> receive() override;
  bool up() override;
  void close() override;

 private:
  void ensure_connection();

  std::string host_;
  uint16_t port_;
  Clock& clock_;
  SimDuration backoff_;
  SimTime next_dial_{0};
  bool stopped_ = false;
  std::unique_ptr<StreamFrameTransport> conn_;
  std::unique_ptr<TcpStream> pending_;
};

}  // namespace plclink
