// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/plant/trace.hpp"

#include <cstdio>
#include <map>

namespace plclink::plant {

void EventCollector::emit(SimTime ts, std::string_view actor, std::string_view kind,
                          std::string_view detail) {
  TraceEvent ev;
  ev.cycle = cycle_;
  ev.seq = seq_++;
  ev.ts = ts;
  ev.actor = std::string(actor);
  ev.kind = std::string(kind);
  ev.detail = std::string(detail);
  events_.push_back(std::move(ev));
  if (actor == "plc1" && kind == "restart") ++cycle_;
}

namespace {

std::vector<uint64_t> seqs_of(const std::vector<TraceEvent>& events, std::string_view actor,
                              std::string_view kind) {
  std::vector<uint64_t> out;
  for (const auto& e : events) {
    if (e.actor == actor && e.kind == kind) out.push_back(e.seq);
  }
  return out;
}

void check_precedes(const std::vector<uint64_t>& before, const std::vector<uint64_t>& after,
                    const char* before_name, const char* after_name,
                    std::vector<std::string>& violations) {
  for (size_t i = 0; i < after.size(); ++i) {
    if (i >= before.size()) {
      violations.push_back(std::string(after_name) + "[" + std::to_string(i) + "] without a " +
                           before_name);
      continue;
    }
    if (after[i] <= before[i]) {
      violations.push_back(std::string(after_name) + "[" + std::to_string(i) +
                           "] does not strictly follow " + before_name + "[" +
                           std::to_string(i) + "]");
    }
  }
}

}  // namespace

std::vector<std::string> check_event_order(const std::vector<TraceEvent>& events) {
  std::vector<std::string> violations;

  check_precedes(seqs_of(events, "plc1", "flag-set"), seqs_of(events, "plc2", "start"),
                 "plc1 flag-set", "plc2 start", violations);
  check_precedes(seqs_of(events, "plc2", "flag-m9"), seqs_of(events, "plc1", "restart"),
                 "plc2 flag-m9", "plc1 restart", violations);
  check_precedes(seqs_of(events, "plc2", "flag-m11"), seqs_of(events, "plc1", "restart"),
                 "plc2 flag-m11", "plc1 restart", violations);

  // Rule (c): strict change/publish alternation per gateway actor.
  std::map<std::string, std::string> prev;  // actor -> last kind seen
  for (const auto& e : events) {
    if (e.kind != "change" && e.kind != "publish") continue;
    auto it = prev.find(e.actor);
    std::string last = it == prev.end() ? "publish" : it->second;
    if (e.kind == "publish" && last != "change") {
      violations.push_back(e.actor + " publish at seq " + std::to_string(e.seq) +
                           " without a preceding change");
    } else if (e.kind == "change" && last == "change") {
      violations.push_back(e.actor + " change at seq " + std::to_string(e.seq) +
                           " while an earlier change was never published");
    }
    prev[e.actor] = e.kind;
  }

  return violations;
}

std::string format_event(const TraceEvent& event) {
  char head[64];
  std::snprintf(head, sizeof head, "%3u %6llu %10.3f ", event.cycle,
                static_cast<unsigned long long>(event.seq),
                static_cast<double>(event.ts.count()) / 1000.0);
  std::string out(head);
  out += event.actor + " " + event.kind;
  if (!event.detail.empty()) out += " " + event.detail;
  return out;
}

}  // namespace plclink::plant
