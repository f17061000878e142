// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <memory>

#include "plclink/gateway/config.hpp"
#include "plclink/gateway/gateway.hpp"
#include "plclink/gateway/payload.hpp"
#include "plclink/modbus/slave.hpp"
#include "plclink/mqtt/broker.hpp"
#include "plclink/mqtt/client.hpp"
#include "plclink/plant/trace.hpp"
#include "plclink/transport/memory_link.hpp"
#include "support/test_util.hpp"

using namespace plclink;
using namespace plclink::gateway;
using std::chrono::milliseconds;

namespace {

GatewayConfig base_config() {
  GatewayConfig cfg;
  cfg.name = "gw";
  cfg.modbus.slave_address = 1;
  cfg.read_map = {0, 1};
  cfg.write_map = {WriteMode::MultiCoil, 0, 2};
  cfg.mqtt.client_id = "gw";
  cfg.mqtt.publish_topic = "up";
  cfg.mqtt.subscribe_topic = "down";
  return cfg;
}

// Gateway + its PLC + broker + an observer client, all on one logical clock.
struct Harness {
  LogicalClock clock;
  WireTap tap;
  mqtt::Broker broker;
  MemoryFrameLink serial{{"serial", &tap, &clock}};
  modbus::DataStore store;
  modbus::SlaveEndpoint slave{serial.b(), store, {*modbus::SlaveAddress::make(1)}};
  plant::EventCollector events;
  mqtt::MqttClient observer{{"observer", 600}};
  bool broker_present = true;
  std::unique_ptr<Gateway> gw;

  void start(GatewayConfig cfg = base_config()) {
    gw = std::make_unique<Gateway>(
        std::move(cfg), serial.a(),
        [this]() -> std::unique_ptr<ByteStream> {
          if (!broker_present) return nullptr;
          auto [client_end, broker_end] = MemoryByteLink::make({"mqtt", &tap, &clock});
          broker.attach(std::move(broker_end), clock.now());
          return std::move(client_end);
        },
        &events);
  }

  void attach_observer() {
    auto [client_end, broker_end] = MemoryByteLink::make();
    broker.attach(std::move(broker_end), clock.now());
    observer.begin_connect(std::move(client_end), clock.now());
  }

  void tick(int n, SimDuration step = milliseconds(1)) {
    for (int i = 0; i < n; ++i) {
      slave.poll(clock.now());
      broker.poll(clock.now());
      observer.poll(clock.now());
      if (gw) gw->poll(clock.now());
      clock.advance(step);
    }
  }

  void run_until_polls(uint64_t target) {
    for (int i = 0; i < 2'000'000 && gw->counters().polls < target; ++i) tick(1, milliseconds(5));
    ASSERT_GE(gw->counters().polls, target);
  }

  size_t events_of(std::string_view kind) const {
    size_t n = 0;
    for (const auto& e : events.events())
      if (e.kind == kind) ++n;
    return n;
  }
};

}  // namespace

TEST(GatewayConfigParse, AcceptsFullDocument) {
  const char* doc = R"({
    "name": "gw9",
    "modbus": {
      "slave_address": 9,
      "host": "10.0.0.1",
      "port": 1502,
      "poll_period_ms": 25,
      "serial": { "baud": 19200, "parity": "none", "data_bits": 8, "stop_bits": 2 },
      "timing": { "response_timeout_ms": 250, "inter_frame_delay_us": 9000, "retries": 3 }
    },
    "read_map": { "start_register": 4, "count": 2 },
    "write_map": { "mode": "multi-coil", "start_coil": 1, "count": 2 },
    "mqtt": {
      "broker_address": "broker.local", "port": 1884, "client_id": "gw9",
      "publish_topic": "a/b", "subscribe_topic": "c/d", "keepalive": 30, "retain": false
    }
  })";
  auto r = parse_gateway_config(doc);
  ASSERT_TRUE(r.ok()) << r.error();
  const auto& cfg = r.value();
  EXPECT_EQ(cfg.name, "gw9");
  EXPECT_EQ(cfg.modbus.slave_address, 9);
  EXPECT_EQ(cfg.modbus.serial.baud, 19200u);
  EXPECT_EQ(cfg.modbus.serial.parity, modbus::Parity::None);
  EXPECT_EQ(cfg.modbus.timing.retries, 3u);
  EXPECT_EQ(cfg.modbus.poll_period, milliseconds(25));
  EXPECT_EQ(cfg.read_map.count, 2u);
  EXPECT_EQ(cfg.write_map.start_coil, 1);
  EXPECT_EQ(cfg.mqtt.port, 1884);
  EXPECT_EQ(cfg.mqtt.keepalive, 30);
}

TEST(GatewayConfigParse, RejectsBadDocuments) {
  auto fails_with = [](const char* doc, const char* needle) {
    auto r = parse_gateway_config(doc);
    ASSERT_FALSE(r.ok()) << doc;
    EXPECT_NE(r.error().find(needle), std::string::npos) << r.error();
  };
  fails_with(R"({"modbus": {"slave_address": 0}, "mqtt": {"client_id": "x"}})", "slave_address");
  fails_with(R"({"modbus": {"slave_address": 248}, "mqtt": {"client_id": "x"}})",
             "slave_address");
  fails_with(R"({"mqtt": {"client_id": "x", "retain": true}})", "retain");
  fails_with(R"({"mqtt": {"client_id": ""}})", "client_id");
  fails_with(R"({"mqtt": {"client_id": "x", "publish_topic": "t/#"}})", "publish_topic");
  fails_with(R"({"mqtt": {"client_id": "x", "publish_topic": "t", "subscribe_topic": "t"}})",
             "differ");
  fails_with(R"({"read_map": {"count": 3}, "mqtt": {"client_id": "x"}})", "read_map");
  fails_with(R"({"write_map": {"mode": "single-coil", "count": 2}, "mqtt": {"client_id": "x"}})",
             "single-coil");
  fails_with(
      R"({"modbus": {"timing": {"inter_frame_delay_us": 100}}, "mqtt": {"client_id": "x"}})",
      "3.5");
  fails_with("{not json", "");
}

TEST(GatewayConfigParse, MissingFileFails) {
  auto r = load_gateway_config("/nonexistent/gateway.json");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.error().find("cannot open"), std::string::npos);
}

TEST(FlagPayload, EncodeDecode) {
  EXPECT_EQ(encode_flag_payload(std::vector<uint16_t>{1, 0}),
            (std::vector<uint8_t>{0x00, 0x01, 0x00, 0x00}));
  EXPECT_EQ(encode_flag_payload(std::vector<uint16_t>{0xABCD}),
            (std::vector<uint8_t>{0xAB, 0xCD}));

  auto words = decode_flag_payload(std::vector<uint8_t>{0x00, 0x01, 0xFF, 0xFF}, 2);
  ASSERT_TRUE(words.has_value());
  EXPECT_EQ(*words, (std::vector<uint16_t>{1, 0xFFFF}));

  EXPECT_FALSE(decode_flag_payload(std::vector<uint8_t>{0x00}, 1).has_value());
  EXPECT_FALSE(decode_flag_payload(std::vector<uint8_t>{0x00, 0x01}, 2).has_value());
  EXPECT_FALSE(decode_flag_payload(std::vector<uint8_t>{}, 1).has_value());

  EXPECT_EQ(words_to_coils(std::vector<uint16_t>{0, 1, 0xFFFF}),
            (std::vector<bool>{false, true, true}));
}

TEST(Gateway, InitialSnapshotThenSilence) {
  Harness h;
  h.start();
  h.run_until_polls(200);
  // Registers never changed: the initial snapshot is the only publish.
  EXPECT_EQ(h.gw->counters().publishes, 1u);
  EXPECT_EQ(h.events_of("change"), 1u);
  EXPECT_EQ(h.gw->counters().poll_failures, 0u);
  EXPECT_TRUE(h.gw->mqtt_ready());
}

TEST(Gateway, PublishesOncePerChange) {
  Harness h;
  h.start();
  h.attach_observer();
  h.tick(20);
  ASSERT_TRUE(h.observer.begin_subscribe("up", h.clock.now()));
  h.run_until_polls(3);  // initial snapshot out

  uint64_t before = h.gw->counters().publishes;
  uint64_t polls = h.gw->counters().polls;
  h.store.set_reg(0, 1);
  h.run_until_polls(polls + 5);
  h.store.set_reg(0, 0);
  h.run_until_polls(h.gw->counters().polls + 5);
  EXPECT_EQ(h.gw->counters().publishes, before + 2);

  auto messages = h.observer.take_messages();
  std::vector<std::vector<uint8_t>> payloads;
  for (auto& [topic, payload] : messages) {
    EXPECT_EQ(topic, "up");
    payloads.push_back(payload);
  }
  // Initial snapshot may have flowed before the observer subscribed; the two
  // change publishes must be the tail.
  ASSERT_GE(payloads.size(), 2u);
  EXPECT_EQ(payloads[payloads.size() - 2], (std::vector<uint8_t>{0x00, 0x01}));
  EXPECT_EQ(payloads[payloads.size() - 1], (std::vector<uint8_t>{0x00, 0x00}));
}

TEST(Gateway, ChangeAndPublishAlternate) {
  Harness h;
  h.start();
  h.run_until_polls(5);
  h.store.set_reg(0, 7);
  h.run_until_polls(h.gw->counters().polls + 5);

  std::string last = "publish";
  for (const auto& e : h.events.events()) {
    if (e.kind == "change") {
      ASSERT_EQ(last, "publish");
      last = "change";
    } else if (e.kind == "publish") {
      ASSERT_EQ(last, "change");
      last = "publish";
    }
  }
  EXPECT_EQ(last, "publish");
}

TEST(Gateway, SubscribedPayloadBecomesMultiCoilWrite) {
  Harness h;
  h.start();
  h.attach_observer();
  h.run_until_polls(2);

  ASSERT_TRUE(h.observer.publish("down", std::vector<uint8_t>{0x00, 0x01, 0x00, 0x00},
                                 h.clock.now()));
  h.tick(100);
  EXPECT_EQ(h.gw->counters().receives, 1u);
  EXPECT_EQ(h.gw->counters().writes_ok, 1u);
  EXPECT_EQ(h.gw->counters().writes_lost, 0u);
  EXPECT_TRUE(h.store.coil(0));
  EXPECT_FALSE(h.store.coil(1));

  bool saw_fc15 = false;
  for (const auto& r : h.tap.records()) {
    if (r.link == "serial" && r.a_to_b && r.bytes.size() > 1 && r.bytes[1] == 0x0F)
      saw_fc15 = true;
  }
  EXPECT_TRUE(saw_fc15);
}

TEST(Gateway, SingleCoilModeUsesFc05) {
  Harness h;
  auto cfg = base_config();
  cfg.write_map = {WriteMode::SingleCoil, 0, 1};
  h.start(std::move(cfg));
  h.attach_observer();
  h.run_until_polls(2);

  ASSERT_TRUE(h.observer.publish("down", std::vector<uint8_t>{0xFF, 0xFF}, h.clock.now()));
  h.tick(100);
  EXPECT_EQ(h.gw->counters().writes_ok, 1u);
  EXPECT_TRUE(h.store.coil(0));

  bool saw_fc05 = false, saw_fc15 = false;
  for (const auto& r : h.tap.records()) {
    if (r.link == "serial" && r.a_to_b && r.bytes.size() > 1) {
      if (r.bytes[1] == 0x05) saw_fc05 = true;
      if (r.bytes[1] == 0x0F) saw_fc15 = true;
    }
  }
  EXPECT_TRUE(saw_fc05);
  EXPECT_FALSE(saw_fc15);
}

TEST(Gateway, QueuedWritesKeepArrivalOrder) {
  Harness h;
  h.start();
  h.attach_observer();
  h.run_until_polls(2);

  ASSERT_TRUE(h.observer.publish("down", std::vector<uint8_t>{0x00, 0x01, 0x00, 0x01},
                                 h.clock.now()));
  ASSERT_TRUE(h.observer.publish("down", std::vector<uint8_t>{0x00, 0x00, 0x00, 0x01},
                                 h.clock.now()));
  h.tick(200);
  EXPECT_EQ(h.gw->counters().writes_ok, 2u);

  std::vector<std::vector<bool>> writes;
  for (const auto& r : h.tap.records()) {
    if (r.link != "serial" || !r.a_to_b) continue;
    auto decoded = modbus::decode_adu(r.bytes, modbus::Role::Slave);
    if (!decoded.ok()) continue;
    if (const auto* w = std::get_if<modbus::WriteMultipleCoilsReq>(&decoded.value().pdu)) {
      writes.push_back(w->states);
    }
  }
  ASSERT_EQ(writes.size(), 2u);
  EXPECT_EQ(writes[0], (std::vector<bool>{true, true}));
  EXPECT_EQ(writes[1], (std::vector<bool>{false, true}));
  // Final store state matches the last message.
  EXPECT_FALSE(h.store.coil(0));
  EXPECT_TRUE(h.store.coil(1));
}

TEST(Gateway, WrongLengthPayloadDropped) {
  Harness h;
  h.start();
  h.attach_observer();
  h.run_until_polls(2);

  ASSERT_TRUE(h.observer.publish("down", std::vector<uint8_t>{0x01, 0x02, 0x03}, h.clock.now()));
  h.tick(100);
  EXPECT_EQ(h.gw->counters().payload_errors, 1u);
  EXPECT_EQ(h.gw->counters().receives, 0u);
  EXPECT_EQ(h.gw->counters().writes_ok, 0u);
  EXPECT_FALSE(h.store.coil(0));
}

TEST(Gateway, PollsContinueWhileBrokerAbsent) {
  Harness h;
  h.broker_present = false;
  h.start();
  h.run_until_polls(10);
  EXPECT_EQ(h.gw->counters().publishes, 0u);
  EXPECT_FALSE(h.gw->mqtt_ready());
  EXPECT_GT(h.events_of("mqtt-down"), 0u);
}

TEST(Gateway, DialBackoffDoubles) {
  Harness h;
  h.broker_present = false;
  h.start();
  h.tick(10'000);  // 10 s of failures
  // Attempts at ~0, 0.5, 1.5, 3.5, 7.5 s; without backoff this would be in
  // the thousands.
  size_t failures = h.events_of("mqtt-down");
  EXPECT_GE(failures, 3u);
  EXPECT_LE(failures, 6u);
}

TEST(Gateway, ReconnectsAndRepublishesSnapshot) {
  Harness h;
  h.broker_present = false;
  h.start();
  h.run_until_polls(5);
  ASSERT_EQ(h.gw->counters().publishes, 0u);

  h.broker_present = true;
  h.tick(10'000);
  EXPECT_TRUE(h.gw->mqtt_ready());
  EXPECT_EQ(h.gw->counters().reconnects, 1u);
  // The snapshot held back during the outage goes out once the session is up.
  EXPECT_EQ(h.gw->counters().publishes, 1u);
  EXPECT_EQ(h.events_of("mqtt-up"), 1u);
}

TEST(Gateway, PollFailureCountedWhenSlaveDead) {
  Harness h;
  h.start();
  h.run_until_polls(2);
  h.serial.b().close();  // PLC side drops off the line

  uint64_t before = h.gw->counters().poll_failures;
  h.tick(3'000, milliseconds(5));
  EXPECT_GT(h.gw->counters().poll_failures, before);
}
