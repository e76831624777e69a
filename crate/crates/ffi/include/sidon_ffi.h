#ifndef SIDON_FFI_H
#define SIDON_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SidonStatus {
  SIDON_STATUS_OK = 0,
  SIDON_STATUS_NULL_POINTER = 1,
  SIDON_STATUS_INVALID_ARGUMENT = 2,
  SIDON_STATUS_PRECONDITION = 3,
  SIDON_STATUS_INCONCLUSIVE = 4,
  SIDON_STATUS_BUFFER_TOO_SMALL = 5,
  SIDON_STATUS_INTERNAL = 6,
} SidonStatus;

/**
 * Output of a dense construction.
 */
typedef struct SidonConstruction SidonConstruction;

/**
 * A finite abelian group in invariant-factor form.
 */
typedef struct SidonGroup SidonGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *sidon_last_error(void);

/**
 * Creates `Z/n_1 x ... x Z/n_k`; factors equal to 1 are dropped and the
 * rest must form a divisibility chain.
 *
 * # Safety
 * `factors` must point to `len` readable values (or be null with `len == 0`);
 * `out` must be writable.
 */
enum SidonStatus sidon_group_new(const uint64_t *factors, size_t len, struct SidonGroup **out);

/**
 * # Safety
 * `group` must come from this library and not be freed twice.
 */
void sidon_group_free(struct SidonGroup *group);

/**
 * # Safety
 * `group` must be a valid handle; `out` must be writable.
 */
enum SidonStatus sidon_group_order(const struct SidonGroup *group, uint64_t *out);

/**
 * Element indices are mixed-radix codes of coordinate vectors, first
 * coordinate most significant.
 *
 * # Safety
 * `group` must be valid; `set` must point to `len` values; `is_sidon_out`
 * and `perfect_out` must be writable (`perfect_out` may be null).
 */
enum SidonStatus sidon_check(const struct SidonGroup *group,
                             const size_t *set,
                             size_t len,
                             bool *is_sidon_out,
                             bool *perfect_out);

/**
 * Builds a dense construction (`erdos_turan`, `singer`, `bose`, `spence`,
 * `hughes`) over the field of order `q`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum SidonStatus sidon_construct(const char *name, uint64_t q, struct SidonConstruction **out);

/**
 * # Safety
 * `c` must come from [`sidon_construct`] and not be freed twice.
 */
void sidon_construction_free(struct SidonConstruction *c);

/**
 * A new group handle for the construction's ambient group.
 *
 * # Safety
 * `c` must be valid; `out` must be writable.
 */
enum SidonStatus sidon_construction_group(const struct SidonConstruction *c,
                                          struct SidonGroup **out);

/**
 * Copies the element indices into `buf`. `len_out` receives the set size;
 * when `cap` is too small nothing is copied and `BufferTooSmall` is
 * returned.
 *
 * # Safety
 * `c` must be valid; `buf` must have room for `cap` values (may be null if
 * `cap == 0`); `len_out` must be writable.
 */
enum SidonStatus sidon_construction_elements(const struct SidonConstruction *c,
                                             size_t *buf,
                                             size_t cap,
                                             size_t *len_out);

/**
 * Largest Sidon set size within a node budget. Returns `Inconclusive`
 * (with `sigma_out` holding the best size found) when the budget ran out.
 *
 * # Safety
 * `group` must be valid; both outputs must be writable.
 */
enum SidonStatus sidon_max_sidon(const struct SidonGroup *group,
                                 uint64_t budget,
                                 uint64_t *sigma_out,
                                 bool *exhaustive_out);

/**
 * Number of (form, q) matches for a group order `n`.
 */
size_t sidon_admissible_order_count(uint64_t n);

/**
 * Runs the command-line tool in-process. `argv` excludes the program
 * name. On return `json_out` owns a string to release with
 * [`sidon_string_free`] and `exit_code` holds the tool's exit status.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; outputs must be
 * writable.
 */
enum SidonStatus sidon_cli_run(const char *const *argv,
                               size_t argc,
                               char **json_out,
                               int *exit_code);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void sidon_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIDON_FFI_H */
