// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#include "plclink/gateway/gateway.hpp"

#include <cassert>

#include "plclink/core/hex.hpp"
#include "plclink/gateway/payload.hpp"

namespace plclink::gateway {

namespace {

std::string words_text(std::span<const uint16_t> words) {
  std::string out = "[";
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(words[i]);
  }
  return out + "]";
}

}  // namespace

Gateway::Gateway(GatewayConfig config, FrameTransport& serial, MqttDialer dial, EventSink* events,
                 Logger log)
    : config_(std::move(config)),
      master_(serial, config_.modbus.timing, log),
      dial_(std::move(dial)),
      client_(mqtt::MqttClient::Options{config_.mqtt.client_id, config_.mqtt.keepalive, true,
                                        std::chrono::seconds(5), log}),
      events_(events),
      log_(log) {
  assert(!validate(config_));
}

void Gateway::emit(SimTime now, std::string_view kind, std::string_view detail) {
  if (events_) events_->emit(now, config_.name, kind, detail);
  if (log_.enabled(LogLevel::Info)) {
    log_.log(now, LogLevel::Info, kind, {{"gw", config_.name}, {"detail", std::string(detail)}});
  }
}

void Gateway::on_mqtt_failure(SimTime now) {
  emit(now, "mqtt-down", std::to_string(static_cast<int>(client_.failure())));
  session_ = Session::Down;
  next_dial_ = now + backoff_;
  backoff_ = std::min(backoff_ * 2, kMaxBackoff);
}

void Gateway::drive_mqtt(SimTime now) {
  if (!config_.enabled) return;

  if (session_ == Session::Down) {
    if (now < next_dial_) return;
    client_.begin_connect(dial_ ? dial_() : nullptr, now);
    if (client_.state() == mqtt::MqttClient::State::Failed) {
      on_mqtt_failure(now);
      return;
    }
    session_ = Session::Connecting;
  }

  client_.poll(now);

  if (client_.state() == mqtt::MqttClient::State::Failed) {
    on_mqtt_failure(now);
    return;
  }

  if (session_ == Session::Connecting &&
      client_.state() == mqtt::MqttClient::State::Connected) {
    client_.begin_subscribe(config_.mqtt.subscribe_topic, now);
    session_ = Session::Subscribing;
  }

  if (session_ == Session::Subscribing) {
    if (auto granted = client_.take_subscribe_result()) {
      if (*granted == 0x80) {
        // Can only happen with a wildcard topic, which validate() refuses.
        emit(now, "mqtt-down", "subscribe-refused");
        client_.disconnect(now);
        session_ = Session::Down;
        next_dial_ = now + backoff_;
        backoff_ = std::min(backoff_ * 2, kMaxBackoff);
        return;
      }
      session_ = Session::Ready;
      backoff_ = std::chrono::milliseconds(500);
      ++counters_.reconnects;
      emit(now, "mqtt-up", config_.mqtt.subscribe_topic);
    }
  }
}

void Gateway::drain_messages(SimTime now) {
  for (auto& [topic, payload] : client_.take_messages()) {
    if (topic != config_.mqtt.subscribe_topic) continue;
    auto words = decode_flag_payload(payload, config_.write_map.count);
    if (!words) {
      ++counters_.payload_errors;
      if (log_.enabled(LogLevel::Warn)) {
        log_.log(now, LogLevel::Warn, "payload-length-mismatch",
                 {{"gw", config_.name}, {"bytes", std::to_string(payload.size())}});
      }
      continue;
    }
    ++counters_.receives;
    emit(now, "receive", words_text(*words));
    write_queue_.push_back(words_to_coils(*words));
  }
}

void Gateway::complete_poll(SimTime now, const modbus::MasterResult& result) {
  if (!result.ok()) {
    ++counters_.poll_failures;
    if (log_.enabled(LogLevel::Warn)) {
      log_.log(now, LogLevel::Warn, "poll-failed",
               {{"gw", config_.name}, {"outcome", to_string(result.outcome)}});
    }
    return;
  }
  const auto* resp = std::get_if<modbus::ReadHoldingRegistersResp>(&*result.response);
  if (!resp || resp->registers.size() != config_.read_map.count) {
    ++counters_.poll_failures;
    return;
  }
  ++counters_.polls;
  if (session_ != Session::Ready) return;  // snapshot stays unpublished
  if (last_published_ && *last_published_ == resp->registers) return;

  bool initial = !last_published_;
  emit(now, "change",
       initial ? "initial " + words_text(resp->registers)
               : words_text(*last_published_) + "->" + words_text(resp->registers));
  auto payload = encode_flag_payload(resp->registers);
  client_.publish(config_.mqtt.publish_topic, payload, now);
  last_published_ = resp->registers;
  ++counters_.publishes;
  emit(now, "publish", to_hex(payload));
}

void Gateway::complete_write(SimTime now, const modbus::MasterResult& result) {
  if (result.ok()) {
    ++counters_.writes_ok;
    emit(now, "write-ok", "");
  } else {
    ++counters_.writes_lost;
    emit(now, "write-lost", to_string(result.outcome));
  }
}

void Gateway::drive_modbus(SimTime now) {
  if (txn_ != Txn::None) {
    auto result = master_.poll(now);
    if (!result) return;
    Txn done = txn_;
    txn_ = Txn::None;
    if (done == Txn::Poll) {
      complete_poll(now, *result);
    } else {
      complete_write(now, *result);
    }
    return;
  }

  auto address = modbus::SlaveAddress::make(config_.modbus.slave_address);
  assert(address);

  if (!write_queue_.empty()) {
    const auto& coils = write_queue_.front();
    modbus::RtuFrame frame{*address, {}};
    if (config_.write_map.mode == WriteMode::SingleCoil) {
      frame.pdu = modbus::WriteSingleCoilReq{config_.write_map.start_coil, coils[0]};
    } else {
      frame.pdu = modbus::WriteMultipleCoilsReq{config_.write_map.start_coil, coils};
    }
    if (master_.submit(frame, now)) {
      write_queue_.pop_front();
      txn_ = Txn::Write;
      emit(now, "write-issued",
           config_.write_map.mode == WriteMode::SingleCoil ? "fc05" : "fc15");
    }
    return;
  }

  if (now >= next_poll_) {
    modbus::RtuFrame frame{
        *address,
        modbus::ReadHoldingRegistersReq{config_.read_map.start_register, config_.read_map.count}};
    if (master_.submit(frame, now)) {
      txn_ = Txn::Poll;
      next_poll_ = now + config_.modbus.poll_period;
    }
  }
}

void Gateway::poll(SimTime now) {
  drive_mqtt(now);
  drain_messages(now);
  drive_modbus(now);
}

void Gateway::shutdown(SimTime now) {
  if (client_.state() == mqtt::MqttClient::State::Connected) {
    client_.disconnect(now);
  }
  session_ = Session::Down;
  next_dial_ = now + backoff_;
}

}  // namespace plclink::gateway
