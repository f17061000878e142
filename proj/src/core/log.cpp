// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/core/log.hpp"

namespace plclink {

namespace {
const char* level_name(LogLevel lvl) {
  switch (lvl) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
    case LogLevel::Off: return "off";
  }
  return "?";
}
}  // namespace

void Logger::log(SimTime ts, LogLevel lvl, std::string_view event,
                 std::initializer_list<std::pair<std::string_view, std::string>> fields) const {
  if (!enabled(lvl)) return;
  std::string line;
  line.reserve(64);
  char head[48];
  std::snprintf(head, sizeof head, "%.6f %-5s ", ts.count() / 1e6, level_name(lvl));
  line += head;
  line += event;
  for (const auto& [k, v] : fields) {
    line += ' ';
    line += k;
    line += '=';
    line += v;
  }
  line += '\n';
  std::fputs(line.c_str(), out_);
}

}  // namespace plclink
