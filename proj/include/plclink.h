/* Copyright (c) 2026 plclink authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the plclink library: run the broker, simulated PLCs, and the
 * Modbus/MQTT bridge as long-lived services, run the full simulated plant
 * scenario, and decode wire frames. All handles are opaque; every fallible
 * call returns a plclink_status and leaves a message in
 * plclink_last_error() on failure.
 */

#ifndef PLCLINK_H
#define PLCLINK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plclink_status {
  PLCLINK_OK = 0,
  PLCLINK_ERR_INVALID_ARG = 1,
  PLCLINK_ERR_CONFIG = 2,  /* bad or unusable configuration */
  PLCLINK_ERR_RUNTIME = 3, /* transport or service failure */
  PLCLINK_ERR_DECODE = 4,  /* frame failed validation */
} plclink_status;

const char* plclink_version(void);

/* Message describing the most recent failure on this thread; empty after a
 * call that succeeded. */
const char* plclink_last_error(void);

/* ---- MQTT broker service ------------------------------------------- */

typedef struct plclink_broker plclink_broker;

/* Binds host:port (port 0 picks an ephemeral port). verbose: 0 quiet,
 * 1 info, 2 debug to stderr. */
plclink_status plclink_broker_create(const char* host, uint16_t port, int verbose,
                                     plclink_broker** out);
uint16_t plclink_broker_port(const plclink_broker* broker);
/* Serves until plclink_broker_stop() is called (from any thread or a signal
 * handler). */
plclink_status plclink_broker_run(plclink_broker* broker);
void plclink_broker_stop(plclink_broker* broker);
void plclink_broker_destroy(plclink_broker* broker);

/* ---- simulated PLC service ------------------------------------------ */

typedef struct plclink_plc plclink_plc;

/* plc_id is 1 (motors 1-5, the cycle initiator) or 2 (motors 6-12). The
 * PLC listens for one serial-over-TCP master connection on host:port. */
plclink_status plclink_plc_create(int plc_id, const char* host, uint16_t port, int verbose,
                                  plclink_plc** out);
uint16_t plclink_plc_port(const plclink_plc* plc);
plclink_status plclink_plc_run(plclink_plc* plc);
void plclink_plc_stop(plclink_plc* plc);
void plclink_plc_destroy(plclink_plc* plc);

/* ---- gateway service ------------------------------------------------ */

typedef struct plclink_gateway plclink_gateway;

/* Loads and validates a JSON gateway config. Fails with
 * PLCLINK_ERR_CONFIG if the file is invalid or the broker address cannot
 * be resolved. */
plclink_status plclink_gateway_create(const char* config_path, int verbose,
                                      plclink_gateway** out);
plclink_status plclink_gateway_run(plclink_gateway* gateway);
void plclink_gateway_stop(plclink_gateway* gateway);
void plclink_gateway_destroy(plclink_gateway* gateway);

/* ---- simulated plant scenario --------------------------------------- */

typedef struct plclink_report plclink_report;

/* Runs the deterministic five-actor scenario. config_path may be NULL for
 * built-in defaults; cycles_override > 0 replaces the configured cycle
 * count. The returned report must be freed with plclink_report_destroy. */
plclink_status plclink_scenario_run(const char* config_path, uint32_t cycles_override,
                                    int verbose, plclink_report** out);

uint32_t plclink_report_cycles_completed(const plclink_report* report);
uint32_t plclink_report_cycles_target(const plclink_report* report);
int plclink_report_deadlock(const plclink_report* report);
size_t plclink_report_violation_count(const plclink_report* report);

/* Copies the rendered report (summary, optionally per-event lines) into
 * buf, NUL-terminated and truncated to cap. Returns the full length
 * (excluding the NUL), so calling with cap 0 sizes a buffer. */
size_t plclink_report_text(const plclink_report* report, int include_events, char* buf,
                           size_t cap);
size_t plclink_report_violation(const plclink_report* report, size_t index, char* buf,
                                size_t cap);
void plclink_report_destroy(plclink_report* report);

/* ---- frame decoding -------------------------------------------------- */

/* Pretty-prints a hex-encoded RTU frame into buf (NUL-terminated,
 * truncated to cap). Returns PLCLINK_OK only for a fully valid frame;
 * PLCLINK_ERR_DECODE still fills buf with a diagnosis (e.g. the CRC
 * verdict) when one can be given. */
plclink_status plclink_decode_modbus(const char* hex, char* buf, size_t cap);

/* Same for one MQTT control packet. */
plclink_status plclink_decode_mqtt(const char* hex, char* buf, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PLCLINK_H */
