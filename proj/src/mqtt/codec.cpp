// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/mqtt/packet.hpp"

namespace plclink::mqtt {

namespace {

constexpr uint8_t kTypeConnect = 1;
constexpr uint8_t kTypeConnack = 2;
constexpr uint8_t kTypePublish = 3;
constexpr uint8_t kTypeSubscribe = 8;
constexpr uint8_t kTypeSuback = 9;
constexpr uint8_t kTypePingreq = 12;
constexpr uint8_t kTypePingresp = 13;
constexpr uint8_t kTypeDisconnect = 14;

void put16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v & 0xFF));
}

void put_string(std::vector<uint8_t>& out, const std::string& s) {
  put16(out, static_cast<uint16_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

std::vector<uint8_t> with_header(uint8_t byte0, std::vector<uint8_t> body) {
  std::vector<uint8_t> out;
  out.push_back(byte0);
  auto rl = encode_remaining_length(static_cast<uint32_t>(body.size()));
  // Bodies of the supported packets cannot exceed the 4-byte limit.
  out.insert(out.end(), rl.value().begin(), rl.value().end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

struct Cursor {
  std::span<const uint8_t> data;
  size_t pos = 0;

  bool remaining(size_t n) const { return data.size() - pos >= n; }
  uint8_t u8() { return data[pos++]; }
  uint16_t u16() {
    uint16_t v = static_cast<uint16_t>(data[pos] << 8 | data[pos + 1]);
    pos += 2;
    return v;
  }
  bool take_string(std::string& out) {
    if (!remaining(2)) return false;
    uint16_t len = u16();
    if (!remaining(len)) return false;
    out.assign(data.begin() + pos, data.begin() + pos + len);
    pos += len;
    return true;
  }
  std::vector<uint8_t> rest() {
    std::vector<uint8_t> out(data.begin() + pos, data.end());
    pos = data.size();
    return out;
  }
  bool done() const { return pos == data.size(); }
};

bool valid_topic_chars(const std::string& s) { return s.find('\0') == std::string::npos; }

using DecodeResult = Result<DecodedPacket, MqttCodecError>;

DecodeResult fail(MqttCodecError e) { return DecodeResult::failure(e); }

DecodeResult decode_connect(uint8_t flags, Cursor c, size_t consumed) {
  if (flags != 0) return fail(MqttCodecError::MalformedPacket);
  std::string protocol;
  if (!c.take_string(protocol)) return fail(MqttCodecError::MalformedPacket);
  if (!c.remaining(4)) return fail(MqttCodecError::MalformedPacket);
  uint8_t level = c.u8();
  if (protocol != "MQTT" || level != 4) return fail(MqttCodecError::UnsupportedPacket);
  uint8_t connect_flags = c.u8();
  if (connect_flags & 0x01) return fail(MqttCodecError::MalformedPacket);  // reserved
  if (connect_flags & 0xFC) return fail(MqttCodecError::UnsupportedPacket);  // will/user/pass
  Connect p;
  p.clean_session = connect_flags & 0x02;
  p.keepalive = c.u16();
  if (!c.take_string(p.client_id) || !c.done()) return fail(MqttCodecError::MalformedPacket);
  return DecodedPacket{p, consumed};
}

DecodeResult decode_publish(uint8_t flags, Cursor c, size_t consumed) {
  uint8_t qos = (flags >> 1) & 0x03;
  if (qos == 3) return fail(MqttCodecError::MalformedPacket);
  if (qos != 0) return fail(MqttCodecError::UnsupportedPacket);
  Publish p;
  p.retain = flags & 0x01;
  p.dup = flags & 0x08;
  if (!c.take_string(p.topic)) return fail(MqttCodecError::MalformedPacket);
  if (p.topic.empty() || !valid_topic_chars(p.topic) ||
      p.topic.find_first_of("+#") != std::string::npos)
    return fail(MqttCodecError::MalformedPacket);
  p.payload = c.rest();
  return DecodedPacket{p, consumed};
}

DecodeResult decode_subscribe(uint8_t flags, Cursor c, size_t consumed) {
  if (flags != 0x02) return fail(MqttCodecError::MalformedPacket);
  if (!c.remaining(2)) return fail(MqttCodecError::MalformedPacket);
  Subscribe p;
  p.packet_id = c.u16();
  while (!c.done()) {
    std::string filter;
    if (!c.take_string(filter) || !c.remaining(1)) return fail(MqttCodecError::MalformedPacket);
    uint8_t qos = c.u8();
    if (qos > 2) return fail(MqttCodecError::MalformedPacket);
    if (filter.empty() || !valid_topic_chars(filter)) return fail(MqttCodecError::MalformedPacket);
    p.filters.push_back(std::move(filter));
  }
  if (p.filters.empty()) return fail(MqttCodecError::MalformedPacket);
  return DecodedPacket{p, consumed};
}

DecodeResult decode_suback(uint8_t flags, Cursor c, size_t consumed) {
  if (flags != 0) return fail(MqttCodecError::MalformedPacket);
  if (!c.remaining(2)) return fail(MqttCodecError::MalformedPacket);
  Suback p;
  p.packet_id = c.u16();
  p.granted = c.rest();
  if (p.granted.empty()) return fail(MqttCodecError::MalformedPacket);
  for (uint8_t g : p.granted) {
    if (g > 2 && g != 0x80) return fail(MqttCodecError::MalformedPacket);
  }
  return DecodedPacket{p, consumed};
}

struct EncodeVisitor {
  std::vector<uint8_t> operator()(const Connect& p) const {
    std::vector<uint8_t> body;
    put_string(body, "MQTT");
    body.push_back(4);  // protocol level
    body.push_back(p.clean_session ? 0x02 : 0x00);
    put16(body, p.keepalive);
    put_string(body, p.client_id);
    return with_header(kTypeConnect << 4, std::move(body));
  }
  std::vector<uint8_t> operator()(const Connack& p) const {
    return with_header(kTypeConnack << 4, {0x00, p.return_code});
  }
  std::vector<uint8_t> operator()(const Publish& p) const {
    std::vector<uint8_t> body;
    put_string(body, p.topic);
    body.insert(body.end(), p.payload.begin(), p.payload.end());
    uint8_t byte0 = static_cast<uint8_t>(kTypePublish << 4);
    if (p.retain) byte0 |= 0x01;
    if (p.dup) byte0 |= 0x08;
    return with_header(byte0, std::move(body));
  }
  std::vector<uint8_t> operator()(const Subscribe& p) const {
    std::vector<uint8_t> body;
    put16(body, p.packet_id);
    for (const auto& f : p.filters) {
      put_string(body, f);
      body.push_back(0x00);  // requested qos
    }
    return with_header(kTypeSubscribe << 4 | 0x02, std::move(body));
  }
  std::vector<uint8_t> operator()(const Suback& p) const {
    std::vector<uint8_t> body;
    put16(body, p.packet_id);
    body.insert(body.end(), p.granted.begin(), p.granted.end());
    return with_header(kTypeSuback << 4, std::move(body));
  }
  std::vector<uint8_t> operator()(const Pingreq&) const {
    return with_header(kTypePingreq << 4, {});
  }
  std::vector<uint8_t> operator()(const Pingresp&) const {
    return with_header(kTypePingresp << 4, {});
  }
  std::vector<uint8_t> operator()(const Disconnect&) const {
    return with_header(kTypeDisconnect << 4, {});
  }
};

}  // namespace

const char* to_string(MqttCodecError err) {
  switch (err) {
    case MqttCodecError::MalformedPacket: return "malformed-packet";
    case MqttCodecError::UnsupportedPacket: return "unsupported-packet";
    case MqttCodecError::NeedMoreBytes: return "need-more-bytes";
    case MqttCodecError::ValueTooLarge: return "value-too-large";
  }
  return "unknown";
}

Result<std::vector<uint8_t>, MqttCodecError> encode_remaining_length(uint32_t n) {
  if (n > kMaxRemainingLength)
    return Result<std::vector<uint8_t>, MqttCodecError>::failure(MqttCodecError::ValueTooLarge);
  std::vector<uint8_t> out;
  do {
    uint8_t digit = n % 128;
    n /= 128;
    if (n > 0) digit |= 0x80;
    out.push_back(digit);
  } while (n > 0);
  return out;
}

std::vector<uint8_t> encode_packet(const MqttPacket& packet) {
  return std::visit(EncodeVisitor{}, packet);
}

Result<DecodedPacket, MqttCodecError> decode_packet(std::span<const uint8_t> bytes) {
  if (bytes.empty()) return fail(MqttCodecError::NeedMoreBytes);
  uint8_t type = bytes[0] >> 4;
  uint8_t flags = bytes[0] & 0x0F;

  uint32_t remaining = 0;
  uint32_t multiplier = 1;
  size_t rl_len = 0;
  for (;;) {
    if (1 + rl_len >= bytes.size()) return fail(MqttCodecError::NeedMoreBytes);
    uint8_t digit = bytes[1 + rl_len];
    ++rl_len;
    remaining += (digit & 0x7F) * multiplier;
    if ((digit & 0x80) == 0) break;
    if (rl_len == 4) return fail(MqttCodecError::MalformedPacket);
    multiplier *= 128;
  }
  size_t total = 1 + rl_len + remaining;
  if (bytes.size() < total) return fail(MqttCodecError::NeedMoreBytes);

  Cursor c{bytes.subspan(1 + rl_len, remaining)};
  switch (type) {
    case kTypeConnect: return decode_connect(flags, c, total);
    case kTypeConnack: {
      if (flags != 0 || remaining != 2) return fail(MqttCodecError::MalformedPacket);
      uint8_t ack_flags = c.u8();
      if (ack_flags > 1) return fail(MqttCodecError::MalformedPacket);
      return DecodedPacket{Connack{c.u8()}, total};
    }
    case kTypePublish: return decode_publish(flags, c, total);
    case kTypeSubscribe: return decode_subscribe(flags, c, total);
    case kTypeSuback: return decode_suback(flags, c, total);
    case kTypePingreq:
      if (flags != 0 || remaining != 0) return fail(MqttCodecError::MalformedPacket);
      return DecodedPacket{Pingreq{}, total};
    case kTypePingresp:
      if (flags != 0 || remaining != 0) return fail(MqttCodecError::MalformedPacket);
      return DecodedPacket{Pingresp{}, total};
    case kTypeDisconnect:
      if (flags != 0 || remaining != 0) return fail(MqttCodecError::MalformedPacket);
      return DecodedPacket{Disconnect{}, total};
    case 0: return fail(MqttCodecError::MalformedPacket);  // reserved
    default: return fail(MqttCodecError::UnsupportedPacket);
  }
}

const char* packet_name(const MqttPacket& packet) {
  struct Visitor {
    const char* operator()(const Connect&) const { return "CONNECT"; }
    const char* operator()(const Connack&) const { return "CONNACK"; }
    const char* operator()(const Publish&) const { return "PUBLISH"; }
    const char* operator()(const Subscribe&) const { return "SUBSCRIBE"; }
    const char* operator()(const Suback&) const { return "SUBACK"; }
    const char* operator()(const Pingreq&) const { return "PINGREQ"; }
    const char* operator()(const Pingresp&) const { return "PINGRESP"; }
    const char* operator()(const Disconnect&) const { return "DISCONNECT"; }
  };
  return std::visit(Visitor{}, packet);
}

}  // namespace plclink::mqtt
