// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

// Black-box tests of the installed CLI: spawn the real binary, check exit
// codes and stdout. Exit code contract: 0 success, 1 runtime failure or
// ordering violations, 2 usage errors.

#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#ifndef PLCLINK_CLI_PATH
#error "PLCLINK_CLI_PATH must point at the plclink binary"
#endif
#ifndef PLCLINK_CONFIG_DIR
#error "PLCLINK_CONFIG_DIR must point at the repo's configs directory"
#endif

namespace {

int run_cli(const std::string& args, std::string* out) {
  std::string cmd = std::string("\"") + PLCLINK_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  out->clear();
  char buf[1024];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out->append(buf, n);
  int rc = pclose(pipe);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string config_path(const char* name) {
  return std::string(PLCLINK_CONFIG_DIR) + "/" + name;
}

}  // namespace

TEST(Cli, DecodeModbusValidFrame) {
  std::string out;
  EXPECT_EQ(run_cli("decode-modbus 010300000001840a", &out), 0);
  EXPECT_NE(out.find("Read Holding Registers"), std::string::npos);
  EXPECT_NE(out.find("CRC OK"), std::string::npos);
}

TEST(Cli, DecodeModbusCrcMismatchExitsOne) {
  std::string out;
  EXPECT_EQ(run_cli("decode-modbus 010300000001840b", &out), 1);
  EXPECT_NE(out.find("CRC MISMATCH"), std::string::npos);
}

TEST(Cli, DecodeModbusBadHexIsUsageError) {
  std::string out;
  EXPECT_EQ(run_cli("decode-modbus zz", &out), 2);
}

TEST(Cli, DecodeMqttPing) {
  std::string out;
  EXPECT_EQ(run_cli("decode-mqtt c000", &out), 0);
  EXPECT_NE(out.find("PINGREQ"), std::string::npos);
}

TEST(Cli, DecodeMqttTruncatedExitsOne) {
  std::string out;
  EXPECT_EQ(run_cli("decode-mqtt 300e000a", &out), 1);
  EXPECT_NE(out.find("truncated"), std::string::npos);
}

TEST(Cli, NoSubcommandIsUsageError) {
  std::string out;
  EXPECT_EQ(run_cli("", &out), 2);
}

TEST(Cli, UnknownFlagIsUsageError) {
  std::string out;
  EXPECT_EQ(run_cli("--frobnicate", &out), 2);
}

TEST(Cli, PlcRequiresId) {
  std::string out;
  EXPECT_EQ(run_cli("plc", &out), 2);
}

TEST(Cli, GatewayConfigMustExist) {
  std::string out;
  EXPECT_EQ(run_cli("gateway --config /nonexistent/gw.json", &out), 2);
}

TEST(Cli, HelpExitsZero) {
  std::string out;
  EXPECT_EQ(run_cli("--help", &out), 0);
  EXPECT_NE(out.find("scenario"), std::string::npos);
}

TEST(Cli, ScenarioSummaryRun) {
  std::string out;
  EXPECT_EQ(run_cli("scenario --cycles 1 --summary-only", &out), 0);
  EXPECT_NE(out.find("cycles: 1/1"), std::string::npos);
  EXPECT_NE(out.find("violations: 0"), std::string::npos);
  EXPECT_EQ(out.find("flag-set"), std::string::npos);
}

TEST(Cli, ScenarioFullReportHasEventLines) {
  std::string out;
  std::string args = "scenario --config \"" + config_path("scenario_default.json") +
                     "\" --cycles 2";
  EXPECT_EQ(run_cli(args, &out), 0);
  EXPECT_NE(out.find("cycles: 2/2"), std::string::npos);
  EXPECT_NE(out.find("flag-set"), std::string::npos);
  EXPECT_NE(out.find("restart"), std::string::npos);
}

TEST(Cli, ScenarioLiveModeIsHandledByServices) {
  std::string out;
  EXPECT_EQ(run_cli("scenario --no-deterministic --cycles 1", &out), 2);
}
