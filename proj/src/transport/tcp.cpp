// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/transport/tcp.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace plclink {

namespace {

void set_nonblocking(int fd) {
  int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

bool resolve(const std::string& host, uint16_t port, sockaddr_in& out) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) return false;
  out = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  out.sin_port = htons(port);
  ::freeaddrinfo(res);
  return true;
}

}  // namespace

bool host_resolvable(const std::string& host) {
  sockaddr_in addr{};
  return resolve(host, 0, addr);
}

TcpStream::TcpStream(int fd, bool connecting) : fd_(fd), connecting_(connecting) {
  if (fd_ >= 0) {
    set_nonblocking(fd_);
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
}

TcpStream::~TcpStream() { close(); }

std::unique_ptr<TcpStream> TcpStream::dial(const std::string& host, uint16_t port) {
  sockaddr_in addr{};
  if (!resolve(host, port, addr)) return nullptr;
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return nullptr;
  set_nonblocking(fd);
  int rc = ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  if (rc != 0 && errno != EINPROGRESS) {
    ::close(fd);
    return nullptr;
  }
  return std::unique_ptr<TcpStream>(new TcpStream(fd, rc != 0));
}

std::unique_ptr<TcpStream> TcpStream::from_fd(int fd) {
  return std::unique_ptr<TcpStream>(new TcpStream(fd, false));
}

void TcpStream::resolve_connect() {
  if (!connecting_ || closed_) return;
  pollfd pfd{fd_, POLLOUT, 0};
  if (::poll(&pfd, 1, 0) <= 0) return;
  int err = 0;
  socklen_t len = sizeof err;
  ::getsockopt(fd_, SOL_SOCKET, SO_ERROR, &err, &len);
  if (err != 0) {
    close();
  } else {
    connecting_ = false;
  }
}

void TcpStream::flush_tx() {
  while (!tx_.empty()) {
    ssize_t n = ::send(fd_, tx_.data(), tx_.size(), MSG_NOSIGNAL);
    if (n > 0) {
      tx_.erase(tx_.begin(), tx_.begin() + n);
    } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      return;
    } else {
      close();
      return;
    }
  }
}

size_t TcpStream::write(std::span<const uint8_t> bytes) {
  resolve_connect();
  if (closed_) return 0;
  tx_.insert(tx_.end(), bytes.begin(), bytes.end());
  if (!connecting_) flush_tx();
  return bytes.size();
}

size_t TcpStream::read(std::span<uint8_t> out) {
  resolve_connect();
  if (closed_ || connecting_ || out.empty()) return 0;
  flush_tx();
  ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
  if (n > 0) return static_cast<size_t>(n);
  if (n == 0) {
    close();
    return 0;
  }
  if (errno != EAGAIN && errno != EWOULDBLOCK) close();
  return 0;
}

StreamState TcpStream::state() {
  resolve_connect();
  if (closed_) return StreamState::Closed;
  if (connecting_) return StreamState::Connecting;
  if (!tx_.empty()) flush_tx();
  return closed_ ? StreamState::Closed : StreamState::Open;
}

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  closed_ = true;
  connecting_ = false;
}

Result<std::unique_ptr<TcpListener>, std::string> TcpListener::bind(const std::string& host,
                                                                    uint16_t port) {
  using R = Result<std::unique_ptr<TcpListener>, std::string>;
  sockaddr_in addr{};
  if (!resolve(host, port, addr)) return R::failure("cannot resolve " + host);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return R::failure(std::strerror(errno));
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    std::string err = std::strerror(errno);
    ::close(fd);
    return R::failure("bind " + host + ":" + std::to_string(port) + ": " + err);
  }
  if (::listen(fd, 16) != 0) {
    std::string err = std::strerror(errno);
    ::close(fd);
    return R::failure("listen: " + err);
  }
  set_nonblocking(fd);
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  return R(std::unique_ptr<TcpListener>(new TcpListener(fd, ntohs(bound.sin_port))));
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpStream> TcpListener::accept() {
  int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) return nullptr;
  return TcpStream::from_fd(fd);
}

bool StreamFrameTransport::send(std::span<const uint8_t> frame) {
  if (!stream_ || stream_->state() == StreamState::Closed) return false;
  uint8_t head[2] = {static_cast<uint8_t>(frame.size() >> 8),
                     static_cast<uint8_t>(frame.size() & 0xFF)};
  stream_->write(head);
  stream_->write(frame);
  return true;
}

std::optional<std::vector<uint8_t>> StreamFrameTransport::receive() {
  if (!stream_) return std::nullopt;
  uint8_t buf[512];
  for (size_t n; (n = stream_->read(std::span(buf))) > 0;) {
    rx_.insert(rx_.end(), buf, buf + n);
  }
  if (rx_.size() < 2) return std::nullopt;
  size_t len = static_cast<size_t>(rx_[0]) << 8 | rx_[1];
  if (rx_.size() < 2 + len) return std::nullopt;
  std::vector<uint8_t> frame(rx_.begin() + 2, rx_.begin() + 2 + len);
  rx_.erase(rx_.begin(), rx_.begin() + 2 + len);
  return frame;
}

bool StreamFrameTransport::up() {
  return stream_ && stream_->state() != StreamState::Closed;
}

void StreamFrameTransport::close() {
  if (stream_) stream_->close();
}

ReconnectingFrameClient::ReconnectingFrameClient(std::string host, uint16_t port, Clock& clock,
                                                 SimDuration backoff)
    : host_(std::move(host)), port_(port), clock_(clock), backoff_(backoff) {}

void ReconnectingFrameClient::ensure_connection() {
  if (stopped_) return;
  if (conn_) {
    if (conn_->up()) return;
    conn_.reset();
    next_dial_ = clock_.now() + backoff_;
  }
  if (pending_) {
    switch (pending_->state()) {
      case StreamState::Open:
        conn_ = std::make_unique<StreamFrameTransport>(std::move(pending_));
        return;
      case StreamState::Connecting:
        return;
      case StreamState::Closed:
        pending_.reset();
        next_dial_ = clock_.now() + backoff_;
        return;
    }
  }
  if (clock_.now() < next_dial_) return;
  pending_ = TcpStream::dial(host_, port_);
  if (!pending_) next_dial_ = clock_.now() + backoff_;
}

bool ReconnectingFrameClient::send(std::span<const uint8_t> frame) {
  ensure_connection();
  return conn_ && conn_->send(frame);
}

std::optional<std::vector<uint8_t>> ReconnectingFrameClient::receive() {
  ensure_connection();
  if (!conn_) return std::nullopt;
  return conn_->receive();
}

bool ReconnectingFrameClient::up() {
  ensure_connection();
  return conn_ != nullptr && conn_->up();
}

void ReconnectingFrameClient::close() {
  stopped_ = true;
  if (conn_) conn_->close();
  pending_.reset();
}

}  // namespace plclink
