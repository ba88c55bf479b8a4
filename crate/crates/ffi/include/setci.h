#ifndef SETCI_H
#define SETCI_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. The first four values match the CLI
 * exit codes.
 */
typedef enum SetciStatus {
  SETCI_STATUS_OK = 0,
  SETCI_STATUS_USAGE = 1,
  SETCI_STATUS_REFUTED = 2,
  SETCI_STATUS_NOT_PROVEN = 3,
  SETCI_STATUS_NULL_POINTER = 4,
  SETCI_STATUS_INVALID_UTF8 = 5,
  SETCI_STATUS_PANIC = 6,
} SetciStatus;

typedef struct SetciCertificate SetciCertificate;

typedef struct SetciIdeal SetciIdeal;

typedef struct SetciRing SetciRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a ring spec such as `GF(3)[t^2,t^3]`.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum SetciStatus setci_ring_parse(const char *spec, struct SetciRing **out);

/**
 * # Safety
 * `ring` must come from `setci_ring_parse` or be null.
 */
void setci_ring_free(struct SetciRing *ring);

/**
 * Parse and classify a prime of `R[X]`, e.g. `ideal(5; X^2+2)` or `ker(X -> t)`.
 *
 * # Safety
 * `ring` must be a live handle, `spec` a valid string and `out` a valid pointer.
 */
enum SetciStatus setci_ideal_parse(const struct SetciRing *ring,
                                   const char *spec,
                                   struct SetciIdeal **out);

/**
 * Height of a classified prime.
 *
 * # Safety
 * `ideal` must be a live handle or null (returns 0).
 */
uint32_t setci_ideal_height(const struct SetciIdeal *ideal);

/**
 * # Safety
 * `ideal` must come from `setci_ideal_parse` or be null.
 */
void setci_ideal_free(struct SetciIdeal *ideal);

/**
 * Build a certificate for a classified prime.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer.
 */
enum SetciStatus setci_certify(const struct SetciIdeal *ideal, struct SetciCertificate **out);

/**
 * Check `rad(generators) = target` and replay every witness, with spot
 * checks drawn from `seed`.
 *
 * # Safety
 * `cert` must be a live handle.
 */
enum SetciStatus setci_certificate_verify(const struct SetciCertificate *cert, uint64_t seed);

/**
 * # Safety
 * `cert` must be a live handle or null (returns 0).
 */
size_t setci_certificate_generator_count(const struct SetciCertificate *cert);

/**
 * Generator `index` as text, or null when out of range. Free with
 * `setci_string_free`.
 *
 * # Safety
 * `cert` must be a live handle.
 */
char *setci_certificate_generator(const struct SetciCertificate *cert, size_t index);

/**
 * Certificate document as JSON, without a verification section.
 *
 * # Safety
 * `cert` must be a live handle and `out` a valid pointer.
 */
enum SetciStatus setci_certificate_to_json(const struct SetciCertificate *cert, char **out);

/**
 * Load a certificate document, reclassifying its target.
 *
 * # Safety
 * `json` must be a valid string and `out` a valid pointer.
 */
enum SetciStatus setci_certificate_from_json(const char *json, struct SetciCertificate **out);

/**
 * # Safety
 * `cert` must come from this library or be null.
 */
void setci_certificate_free(struct SetciCertificate *cert);

/**
 * Run a CLI argument vector (without the program name). Returns the exit
 * code; standard output is stored in `out_stdout` when it is non-null.
 *
 * # Safety
 * `argv` must point to `argc` valid strings.
 */
int setci_run(const char *const *argv, size_t argc, char **out_stdout);

/**
 * Message for the last failure on this thread. Valid until the next call
 * into the library from the same thread; do not free.
 */
const char *setci_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void setci_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SETCI_H */
