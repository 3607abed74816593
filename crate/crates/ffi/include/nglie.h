#ifndef NGLIE_H
#define NGLIE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every exported call. Values match the CLI exit codes.
 */
typedef enum NgStatus {
  NG_OK = 0,
  /**
   * A law check ran and found a counterexample; the report is still
   * returned.
   */
  NG_VERIFY_FAILED = 1,
  /**
   * The spec or group element violates a side condition.
   */
  NG_SPEC_VIOLATION = 2,
  /**
   * Malformed input: TOML, element syntax, unknown law or preset.
   */
  NG_PARSE_ERROR = 3,
  NG_IO_ERROR = 4,
  NG_NULL_POINTER = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  NG_PANIC = 6,
} NgStatus;

/**
 * Opaque handle to a constructed algebra family.
 */
typedef struct NgSpec NgSpec;

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *ng_last_error(void);

/**
 * Library version as a static string.
 */
const char *ng_version(void);

/**
 * Loads a TOML spec file. The handle is written to `out` even when the
 * spec violates side conditions; use [`ng_spec_validate`] to inspect them.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum NgStatus ng_spec_load(const char *path, struct NgSpec **out);

/**
 * Builds a spec from TOML text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum NgStatus ng_spec_from_str(const char *text, struct NgSpec **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `spec` must be null or a handle not yet freed.
 */
void ng_spec_free(struct NgSpec *spec);

/**
 * Releases a string returned through an out-pointer. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ng_string_free(char *s);

/**
 * Writes the violations as a JSON array to `out`. Returns
 * `NG_SPEC_VIOLATION` when the array is non-empty.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum NgStatus ng_spec_validate(const struct NgSpec *spec, char **out);

/**
 * Writes the canonical text of `[left, right]` to `out`.
 *
 * # Safety
 * `spec` must be a live handle, `left`/`right` NUL-terminated, `out`
 * writable.
 */
enum NgStatus ng_bracket(const struct NgSpec *spec,
                         const char *left,
                         const char *right,
                         char **out);

/**
 * Runs a seeded law check with the default sampling budget and writes the
 * JSON report to `out`.
 *
 * # Safety
 * `spec` must be a live handle, `law` NUL-terminated, `out` writable.
 */
enum NgStatus ng_verify(const struct NgSpec *spec,
                        const char *law,
                        uint64_t seed,
                        size_t trials,
                        char **out);

/**
 * Writes structure constants over the monomial window as JSON.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum NgStatus ng_export_sc(const struct NgSpec *spec,
                           int64_t gen_bound,
                           uint32_t nat_bound,
                           char **out);

/**
 * Applies the group element (TOML text) to a lattice (TOML text) and
 * writes the JSON report; `target` may be null.
 *
 * # Safety
 * `group`/`gamma` must be NUL-terminated, `target` null or NUL-terminated,
 * `out` writable.
 */
enum NgStatus ng_iso_act(const char *group, const char *gamma, const char *target, char **out);

#endif  /* NGLIE_H */
