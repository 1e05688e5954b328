#ifndef SPLITSTAR_H
#define SPLITSTAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_ARGUMENT = 1,
  SS_STATUS_INVALID_UTF8 = 2,
  SS_STATUS_PARSE_ERROR = 3,
  SS_STATUS_INVALID_REQUEST = 4,
  SS_STATUS_INTERNAL = 5,
} SsStatus;

/**
 * A constructed cover.
 */
typedef struct SsCover SsCover;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Constructs a cover of `S_n^2` with `|c1| = ell`, `u` in `c1` and `v` in
 * `c2`. On success `*out` owns a handle for [`ss_cover_free`].
 *
 * # Safety
 * `u` and `v` must be null or NUL-terminated strings; `out` must be null
 * or writable.
 */
enum SsStatus ss_dcc_construct(size_t n,
                               const char *u,
                               const char *v,
                               size_t ell,
                               struct SsCover **out);

/**
 * Length of cycle `which` (1 or 2).
 *
 * # Safety
 * `cover` must be null or a live handle; `out` must be null or writable.
 */
enum SsStatus ss_cover_len(const struct SsCover *cover, uint8_t which, size_t *out);

/**
 * Vertex `index` of cycle `which` as text, freed with [`ss_string_free`].
 *
 * # Safety
 * `cover` must be null or a live handle; `out` must be null or writable.
 */
enum SsStatus ss_cover_vertex(const struct SsCover *cover, uint8_t which, size_t index, char **out);

/**
 * The cover as a JSON document, freed with [`ss_string_free`].
 *
 * # Safety
 * `cover` must be null or a live handle; `out` must be null or writable.
 */
enum SsStatus ss_cover_to_json(const struct SsCover *cover, char **out);

/**
 * Validates a JSON cover document. `*ok` is 1 when it is a valid cover
 * and 0 otherwise; the violations are then in [`ss_last_error_message`].
 *
 * # Safety
 * `json` must be null or a NUL-terminated string; `ok` must be null or
 * writable.
 */
enum SsStatus ss_validate_json(const char *json, int32_t *ok);

/**
 * Releases a cover handle. Null is ignored.
 *
 * # Safety
 * `cover` must be null or a handle not yet freed.
 */
void ss_cover_free(struct SsCover *cover);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ss_string_free(char *s);

/**
 * Message for the last call on this thread; empty after success. Valid
 * until the next call on the same thread.
 */
const char *ss_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPLITSTAR_H */
