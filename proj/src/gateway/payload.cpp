// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/gateway/payload.hpp"

namespace plclink::gateway {

std::vector<uint8_t> encode_flag_payload(std::span<const uint16_t> words) {
  std::vector<uint8_t> out;
  out.reserve(words.size() * 2);
  for (uint16_t w : words) {
    out.push_back(static_cast<uint8_t>(w >> 8));
    out.push_back(static_cast<uint8_t>(w & 0xFF));
  }
  return out;
}

std::optional<std::vector<uint16_t>> decode_flag_payload(std::span<const uint8_t> payload,
                                                         size_t expect_words) {
  if (payload.size() != expect_words * 2) return std::nullopt;
  std::vector<uint16_t> out;
  out.reserve(expect_words);
  for (size_t i = 0; i < payload.size(); i += 2) {
    out.push_back(static_cast<uint16_t>(payload[i] << 8 | payload[i + 1]));
  }
  return out;
}

std::vector<bool> words_to_coils(std::span<const uint16_t> words) {
  std::vector<bool> out;
  out.reserve(words.size());
  for (uint16_t w : words) out.push_back(w != 0);
  return out;
}

}  // namespace plclink::gateway
