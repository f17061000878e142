// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/transport/memory_link.hpp"

#include <algorithm>

namespace plclink {

class MemoryFrameLink::End final : public FrameTransport {
 public:
  End(MemoryFrameLink& link, bool is_a) : link_(link), is_a_(is_a) {}

  bool send(std::span<const uint8_t> frame) override {
    bool& self_open = is_a_ ? link_.a_open_ : link_.b_open_;
    bool& peer_open = is_a_ ? link_.b_open_ : link_.a_open_;
    if (!self_open || !peer_open) return false;
    link_.push(is_a_, frame);
    return true;
  }

  std::optional<std::vector<uint8_t>> receive() override { return link_.pop(is_a_); }

  bool up() override { return (is_a_ ? link_.a_open_ : link_.b_open_) && (is_a_ ? link_.b_open_ : link_.a_open_); }

  void close() override { (is_a_ ? link_.a_open_ : link_.b_open_) = false; }

 private:
  MemoryFrameLink& link_;
  bool is_a_;
};

MemoryFrameLink::MemoryFrameLink(Options opts)
    : opts_(std::move(opts)), rng_(opts_.seed) {
  a_ = std::make_unique<End>(*this, true);
  b_ = std::make_unique<End>(*this, false);
}

MemoryFrameLink::MemoryFrameLink() : MemoryFrameLink(Options{}) {}

MemoryFrameLink::~MemoryFrameLink() = default;

FrameTransport& MemoryFrameLink::a() { return *a_; }
FrameTransport& MemoryFrameLink::b() { return *b_; }

void MemoryFrameLink::push(bool from_a, std::span<const uint8_t> frame) {
  std::vector<uint8_t> bytes(frame.begin(), frame.end());

  double percent = from_a ? opts_.corrupt_percent_a_to_b : opts_.corrupt_percent_b_to_a;
  bool one_shot = !from_a && corrupt_once_b_to_a_;
  bool corrupt = one_shot;
  if (!corrupt && percent > 0.0 && !bytes.empty()) {
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    corrupt = dist(rng_) < percent;
  }
  if (corrupt && !bytes.empty()) {
    std::uniform_int_distribution<size_t> pick(0, bytes.size() * 8 - 1);
    size_t bit = pick(rng_);
    bytes[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    ++corrupted_;
    if (one_shot) corrupt_once_b_to_a_ = false;
  }

  if (opts_.tap) {
    SimTime ts = opts_.clock ? opts_.clock->now() : SimTime{0};
    opts_.tap->record(ts, opts_.name, from_a, bytes);
  }
  (from_a ? to_b_ : to_a_).push_back(std::move(bytes));
}

std::optional<std::vector<uint8_t>> MemoryFrameLink::pop(bool for_a) {
  auto& q = for_a ? to_a_ : to_b_;
  if (q.empty()) return std::nullopt;
  std::vector<uint8_t> out = std::move(q.front());
  q.pop_front();
  return out;
}

namespace {

struct ByteLinkState {
  MemoryByteLink::Options opts;
  std::deque<uint8_t> to_a;
  std::deque<uint8_t> to_b;
  bool a_open = true;
  bool b_open = true;
};

class ByteEnd final : public ByteStream {
 public:
  ByteEnd(std::shared_ptr<ByteLinkState> s, bool is_a) : s_(std::move(s)), is_a_(is_a) {}

  size_t write(std::span<const uint8_t> bytes) override {
    bool self_open = is_a_ ? s_->a_open : s_->b_open;
    bool peer_open = is_a_ ? s_->b_open : s_->a_open;
    if (!self_open || !peer_open) return 0;
    auto& q = is_a_ ? s_->to_b : s_->to_a;
    q.insert(q.end(), bytes.begin(), bytes.end());
    if (s_->opts.tap) {
      SimTime ts = s_->opts.clock ? s_->opts.clock->now() : SimTime{0};
      s_->opts.tap->record(ts, s_->opts.name, is_a_, bytes);
    }
    return bytes.size();
  }

  size_t read(std::span<uint8_t> out) override {
    auto& q = is_a_ ? s_->to_a : s_->to_b;
    size_t n = std::min(out.size(), q.size());
    for (size_t i = 0; i < n; ++i) {
      out[i] = q.front();
      q.pop_front();
    }
    return n;
  }

  StreamState state() override {
    bool self_open = is_a_ ? s_->a_open : s_->b_open;
    if (!self_open) return StreamState::Closed;
    bool peer_open = is_a_ ? s_->b_open : s_->a_open;
    auto& q = is_a_ ? s_->to_a : s_->to_b;
    if (!peer_open && q.empty()) return StreamState::Closed;
    return StreamState::Open;
  }

  void close() override { (is_a_ ? s_->a_open : s_->b_open) = false; }

 private:
  std::shared_ptr<ByteLinkState> s_;
  bool is_a_;
};

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> MemoryByteLink::make() {
  return make(Options{});
}

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> MemoryByteLink::make(
    Options opts) {
  auto state = std::make_shared<ByteLinkState>();
  state->opts = std::move(opts);
  return {std::make_unique<ByteEnd>(state, true), std::make_unique<ByteEnd>(state, false)};
}

}  // namespace plclink
