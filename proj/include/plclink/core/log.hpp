// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "plclink/core/time.hpp"

namespace plclink {

enum class LogLevel { Debug = 0, Info, Warn, Error, Off };

// Line-oriented structured logger: `ts level event key=value ...`, one event
// per line. Cheap enough to pass by value.
class Logger {
 public:
  Logger() : out_(nullptr), min_(LogLevel::Off) {}
  Logger(std::FILE* out, LogLevel min) : out_(out), min_(min) {}

  bool enabled(LogLevel lvl) const { return out_ != nullptr && lvl >= min_; }

  void log(SimTime ts, LogLevel lvl, std::string_view event,
           std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) const;

 private:
  std::FILE* out_;
  LogLevel min_;
};

}  // namespace plclink
