// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plclink {

std::string to_hex(std::span<const uint8_t> bytes);

// Accepts upper/lower case and ignores spaces; rejects odd length or
// non-hex characters.
std::optional<std::vector<uint8_t>> from_hex(std::string_view text);

}  // namespace plclink
