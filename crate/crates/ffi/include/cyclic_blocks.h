#ifndef CYCLIC_BLOCKS_H
#define CYCLIC_BLOCKS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  CB_STATUS_OK = 0,
  CB_STATUS_INVALID_ARGUMENT = 1,
  CB_STATUS_PARSE_ERROR = 2,
  CB_STATUS_VALIDATION_ERROR = 3,
  /**
   * The computation finished but an internal consistency check failed.
   * Output, if any, is still written.
   */
  CB_STATUS_CONSISTENCY_ERROR = 4,
  CB_STATUS_INTERNAL_ERROR = 5,
} cb_status;

/**
 * A validated block descriptor.
 */
typedef struct cb_block_t cb_block_t;

/**
 * Multiplicities of the irreducible characters `λ_0, ..., λ_(p^n - 1)`.
 */
typedef struct cb_character_t cb_character_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next library call on the same thread.
 */
const char *cb_last_error_message(void);

/**
 * Parses and validates a JSON block descriptor. With `strict`, equal signs
 * on adjacent vertices are rejected instead of logged.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
cb_status cb_block_from_json(const char *json, bool strict, cb_block_t **out);

/**
 * # Safety
 * `block` must be null or a handle from [`cb_block_from_json`] not yet freed.
 */
void cb_block_free(cb_block_t *block);

/**
 * Enumeration table as JSON for vertex `D_vertex`, or for every vertex when
 * `vertex < 0`. Returns `ConsistencyError` with the partial table written
 * when a vertex does not yield the expected number of modules.
 *
 * # Safety
 * `block` must be a live handle and `out` a valid pointer. The string must be
 * released with [`cb_string_free`].
 */
cb_status cb_block_enumerate_json(const cb_block_t *block, int32_t vertex, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cb_string_free(char *s);

/**
 * `ℓ_i`, the dimension of `Cap(Res_(D_i)(W))`, for `W` given by its
 * strictly increasing indices.
 *
 * # Safety
 * `indices` must point to `len` values (or be null with `len = 0`) and
 * `out` must be valid.
 */
cb_status cb_cap_dim(uint64_t p,
                     uint32_t n,
                     const uint32_t *indices,
                     size_t len,
                     uint32_t vertex,
                     uint64_t *out);

/**
 * Character of the determinant-one lift of `W`.
 *
 * # Safety
 * As for [`cb_cap_dim`]; the handle must be released with [`cb_character_free`].
 */
cb_status cb_det1_character(uint64_t p,
                            uint32_t n,
                            const uint32_t *indices,
                            size_t len,
                            cb_character_t **out);

/**
 * Character of the lift of the local trivial source module with vertex `D_vertex`.
 *
 * # Safety
 * As for [`cb_det1_character`].
 */
cb_status cb_morita_character(uint64_t p,
                              uint32_t n,
                              const uint32_t *indices,
                              size_t len,
                              uint32_t vertex,
                              cb_character_t **out);

/**
 * Number of multiplicities, `p^n`; 0 for a null handle.
 *
 * # Safety
 * `chi` must be null or a live handle.
 */
size_t cb_character_len(const cb_character_t *chi);

/**
 * Borrowed pointer to the multiplicities, valid while the handle lives.
 *
 * # Safety
 * `chi` must be null or a live handle.
 */
const int64_t *cb_character_data(const cb_character_t *chi);

/**
 * # Safety
 * `chi` must be null or a live handle.
 */
void cb_character_free(cb_character_t *chi);

/**
 * Runs the consistency grid and writes its JSON report. Returns
 * `ConsistencyError`, report included, when any check fails.
 *
 * # Safety
 * `primes` must point to `primes_len` values and `out` must be valid. The
 * string must be released with [`cb_string_free`].
 */
cb_status cb_oracle_run_json(const uint64_t *primes,
                             size_t primes_len,
                             uint32_t n_max,
                             uint64_t seed,
                             size_t corpus_size,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLIC_BLOCKS_H */
