// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace plclink::gateway {

// Bridge payload = the polled register words, concatenated big-endian.
std::vector<uint8_t> encode_flag_payload(std::span<const uint16_t> words);

// Rejects payloads whose length is not exactly 2 * expect_words.
std::optional<std::vector<uint16_t>> decode_flag_payload(std::span<const uint8_t> payload,
                                                         size_t expect_words);

// Register word -> coil state: anything nonzero is ON.
std::vector<bool> words_to_coils(std::span<const uint16_t> words);

}  // namespace plclink::gateway
