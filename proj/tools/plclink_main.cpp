// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0
//
// Operator entry point. Links only the public C API.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plclink.h"

namespace {

// SIGINT must reach whichever service is currently blocking in run().
plclink_broker* g_broker = nullptr;
plclink_plc* g_plc = nullptr;
plclink_gateway* g_gateway = nullptr;

void on_signal(int) {
  if (g_broker) plclink_broker_stop(g_broker);
  if (g_plc) plclink_plc_stop(g_plc);
  if (g_gateway) plclink_gateway_stop(g_gateway);
}

void install_signal_handlers() {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
}

bool split_listen(const std::string& listen, std::string& host, uint16_t& port) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) return false;
  host = listen.substr(0, colon);
  try {
    unsigned long p = std::stoul(listen.substr(colon + 1));
    if (p > 65535) return false;
    port = static_cast<uint16_t>(p);
  } catch (...) {
    return false;
  }
  return true;
}

int fail(const char* what) {
  std::fprintf(stderr, "plclink: %s: %s\n", what, plclink_last_error());
  return 1;
}

int run_broker(const std::string& listen, int verbose) {
  std::string host;
  uint16_t port = 0;
  if (!split_listen(listen, host, port)) {
    std::fprintf(stderr, "plclink: --listen expects HOST:PORT, got '%s'\n", listen.c_str());
    return 2;
  }
  plclink_broker* broker = nullptr;
  if (plclink_broker_create(host.c_str(), port, verbose, &broker) != PLCLINK_OK)
    return fail("broker");
  g_broker = broker;
  install_signal_handlers();
  std::fprintf(stderr, "plclink broker listening on %s:%u\n", host.c_str(),
               plclink_broker_port(broker));
  plclink_status rc = plclink_broker_run(broker);
  g_broker = nullptr;
  plclink_broker_destroy(broker);
  return rc == PLCLINK_OK ? 0 : fail("broker");
}

int run_plc(int id, const std::string& listen, int verbose) {
  std::string host;
  uint16_t port = 0;
  if (!split_listen(listen, host, port)) {
    std::fprintf(stderr, "plclink: --listen expects HOST:PORT, got '%s'\n", listen.c_str());
    return 2;
  }
  plclink_plc* plc = nullptr;
  if (plclink_plc_create(id, host.c_str(), port, verbose, &plc) != PLCLINK_OK)
    return fail("plc");
  g_plc = plc;
  install_signal_handlers();
  std::fprintf(stderr, "plclink plc%d (modbus slave %d) listening on %s:%u\n", id, id,
               host.c_str(), plclink_plc_port(plc));
  plclink_status rc = plclink_plc_run(plc);
  g_plc = nullptr;
  plclink_plc_destroy(plc);
  return rc == PLCLINK_OK ? 0 : fail("plc");
}

int run_gateway(const std::string& config, int verbose) {
  plclink_gateway* gw = nullptr;
  if (plclink_gateway_create(config.c_str(), verbose, &gw) != PLCLINK_OK)
    return fail("gateway");
  g_gateway = gw;
  install_signal_handlers();
  plclink_status rc = plclink_gateway_run(gw);
  g_gateway = nullptr;
  plclink_gateway_destroy(gw);
  return rc == PLCLINK_OK ? 0 : fail("gateway");
}

int run_scenario(const std::string& config, unsigned cycles, bool summary_only, int verbose) {
  plclink_report* report = nullptr;
  plclink_status rc = plclink_scenario_run(config.empty() ? nullptr : config.c_str(),
                                           cycles, verbose, &report);
  if (rc != PLCLINK_OK) return fail("scenario");

  size_t need = plclink_report_text(report, summary_only ? 0 : 1, nullptr, 0);
  std::string text(need, '\0');
  plclink_report_text(report, summary_only ? 0 : 1, text.data(), text.size() + 1);
  std::fputs(text.c_str(), stdout);

  bool ok = plclink_report_violation_count(report) == 0 &&
            plclink_report_deadlock(report) == 0 &&
            plclink_report_cycles_completed(report) >= plclink_report_cycles_target(report);
  plclink_report_destroy(report);
  return ok ? 0 : 1;
}

int run_decode(bool mqtt, const std::string& hex) {
  char buf[4096];
  plclink_status rc = mqtt ? plclink_decode_mqtt(hex.c_str(), buf, sizeof buf)
                           : plclink_decode_modbus(hex.c_str(), buf, sizeof buf);
  std::printf("%s\n", buf);
  if (rc == PLCLINK_ERR_INVALID_ARG) return 2;
  return rc == PLCLINK_OK ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plclink: Modbus RTU <-> MQTT bridge toolkit"};
  app.require_subcommand(1);
  int verbose = 0;
  app.add_flag("-v,--verbose", verbose, "increase log detail (-v info, -vv debug)");

  auto* broker = app.add_subcommand("broker", "run the MQTT broker");
  std::string broker_listen = "127.0.0.1:1883";
  broker->add_option("--listen", broker_listen, "HOST:PORT to listen on")
      ->capture_default_str();

  auto* plc = app.add_subcommand("plc", "run a simulated PLC as a Modbus slave");
  int plc_id = 0;
  std::string plc_listen = "127.0.0.1:0";
  plc->add_option("--id", plc_id, "which PLC program to run (1 or 2)")
      ->required()
      ->check(CLI::Range(1, 2));
  plc->add_option("--listen", plc_listen, "HOST:PORT for the serial-over-TCP link")
      ->capture_default_str();

  auto* gateway = app.add_subcommand("gateway", "run a Modbus<->MQTT bridge");
  std::string gateway_config;
  gateway->add_option("--config", gateway_config, "gateway config file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* scenario = app.add_subcommand("scenario", "run the two-PLC handshake harness");
  std::string scenario_config;
  unsigned scenario_cycles = 0;
  bool summary_only = false;
  bool deterministic = true;
  scenario->add_option("--config", scenario_config, "scenario config file")
      ->check(CLI::ExistingFile);
  scenario->add_option("--cycles", scenario_cycles, "override the cycle target");
  scenario->add_flag("--deterministic,!--no-deterministic", deterministic,
                     "single-process run on a logical clock (only supported mode)");
  scenario->add_flag("--summary-only", summary_only, "omit per-event lines from the report");

  auto* dec_modbus = app.add_subcommand("decode-modbus", "pretty-print a Modbus RTU frame");
  std::string modbus_hex;
  dec_modbus->add_option("hex", modbus_hex, "frame bytes as hex")->required();

  auto* dec_mqtt = app.add_subcommand("decode-mqtt", "pretty-print an MQTT control packet");
  std::string mqtt_hex;
  dec_mqtt->add_option("hex", mqtt_hex, "packet bytes as hex")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (broker->parsed()) return run_broker(broker_listen, verbose);
  if (plc->parsed()) return run_plc(plc_id, plc_listen, verbose);
  if (gateway->parsed()) return run_gateway(gateway_config, verbose);
  if (scenario->parsed()) {
    if (!deterministic) {
      std::fprintf(stderr,
                   "plclink: live scenarios are driven by launching broker/plc/gateway "
                   "processes directly; see README\n");
      return 2;
    }
    return run_scenario(scenario_config, scenario_cycles, summary_only, verbose);
  }
  if (dec_modbus->parsed()) return run_decode(false, modbus_hex);
  if (dec_mqtt->parsed()) return run_decode(true, mqtt_hex);
  return 2;
}
