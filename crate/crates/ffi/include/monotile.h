/* SPDX-License-Identifier: MIT OR Apache-2.0 */

#ifndef MONOTILE_H
#define MONOTILE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MtStatus {
  MT_STATUS_OK = 0,
  MT_STATUS_NULL_POINTER = 1,
  // Argument outside its domain (unknown kind, level 0, bad UTF-8).
  MT_STATUS_DOMAIN = 2,
  // Level above the build limit.
  MT_STATUS_DEPTH = 3,
  MT_STATUS_PARSE = 4,
  // The patch breaks the matching rules.
  MT_STATUS_INVALID = 5,
  MT_STATUS_INTERNAL = 6,
} MtStatus;

typedef enum MtKind {
  MT_KIND_T = 0,
  MT_KIND_P = 1,
} MtKind;

typedef enum MtStrip {
  MT_STRIP_A = 0,
  MT_STRIP_B = 1,
  MT_STRIP_J = 2,
} MtStrip;

// Opaque patch handle.
typedef struct MtPatch MtPatch;

// Counts of a patch. Tile counts are zero when it does not assemble.
typedef struct MtStats {
  size_t n_red;
  size_t n_black;
  size_t n_redblack;
  size_t n_flipped;
  size_t n_regular;
} MtStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Short English description of a status code. The string is static.
const char *mt_status_message(enum MtStatus status);

// Build the metatile `kind` at `level` into `*out`.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum MtStatus mt_patch_generate(enum MtKind kind, uint32_t level, struct MtPatch **out);

// Parse a patch file.
//
// # Safety
// `json` must be null or a NUL-terminated string; `out` must be null or
// valid for writing one pointer.
enum MtStatus mt_patch_from_json(const char *json, struct MtPatch **out);

// Serialize a patch; free the result with [`mt_string_free`].
//
// # Safety
// `patch` must be null or a live handle; `out` must be null or valid for
// writing one pointer.
enum MtStatus mt_patch_to_json(const struct MtPatch *patch, char **out);

// Count matching-rule violations into `*violations`. Returns
// `MT_STATUS_INVALID` when there are any.
//
// # Safety
// `patch` must be null or a live handle; `violations` null or writable.
enum MtStatus mt_patch_validate(const struct MtPatch *patch, size_t *violations);

// Number of rhombs in the patch, 0 for a null handle.
//
// # Safety
// `patch` must be null or a live handle.
size_t mt_patch_len(const struct MtPatch *patch);

// # Safety
// `patch` must be null or a live handle; `out` null or writable.
enum MtStatus mt_patch_stats(const struct MtPatch *patch, struct MtStats *out);

// Release a patch. Null is ignored.
//
// # Safety
// `patch` must be null or a handle from this library not yet freed.
void mt_patch_free(struct MtPatch *patch);

// Strip word as a string of `0` and `1`.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum MtStatus mt_strip_word(enum MtStrip strip, uint32_t level, char **out);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void mt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOTILE_H */
