/* C interface to the wham weighted-Hamming metric toolkit.
 * Generated; do not edit by hand. */

#ifndef WHAM_H
#define WHAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every function; 0 is success, nonzero values
 * identify the failure and `wham_last_error_message` describes it.
 */
typedef enum WhamStatus {
  WhamStatus_Ok = 0,
  WhamStatus_CompositeModulus = 1,
  WhamStatus_DivisionByZero = 2,
  WhamStatus_LengthMismatch = 3,
  WhamStatus_InvalidCrossover = 4,
  WhamStatus_ZeroCode = 5,
  WhamStatus_BudgetExceeded = 6,
  WhamStatus_InvalidDistance = 7,
  WhamStatus_InvalidDimension = 8,
  WhamStatus_NonIntegralTransform = 9,
  WhamStatus_InvalidParameter = 10,
  WhamStatus_LengthExceedsField = 11,
  WhamStatus_DecodeFailure = 12,
  WhamStatus_NullArgument = 100,
  WhamStatus_InternalPanic = 101,
} WhamStatus;

/**
 * Selector values for `wham_code_min_distance`.
 */
typedef enum WhamDistanceMethod {
  WhamDistanceMethod_Auto = 0,
  WhamDistanceMethod_Codebook = 1,
  WhamDistanceMethod_SupportEnum = 2,
} WhamDistanceMethod;

/**
 * Selector values for `wham_construct`.
 */
typedef enum WhamFamily {
  WhamFamily_Binary = 0,
  WhamFamily_Mds = 1,
} WhamFamily;

/**
 * Selector values for `wham_simulate`.
 */
typedef enum WhamDecoder {
  WhamDecoder_Ml = 0,
  WhamDecoder_WhReal = 1,
  WhamDecoder_WhInteger = 2,
} WhamDecoder;

/**
 * Opaque handle to a linear code.
 */
typedef struct WhamCode WhamCode;

/**
 * Opaque handle to a constructed two-level code with its decoder tables.
 */
typedef struct WhamConstruction WhamConstruction;

/**
 * The five bounds at one distance; `plotkin` is meaningful only when
 * `has_plotkin` is true.
 */
typedef struct WhamBounds {
  uint64_t singleton;
  uint64_t hamming;
  uint64_t gv;
  bool has_plotkin;
  uint64_t plotkin;
  uint64_t lp;
} WhamBounds;

/**
 * Scalar counters of a simulation run; per-block rates are written to the
 * caller's buffer separately.
 */
typedef struct WhamSimulationStats {
  uint64_t trials;
  uint64_t word_errors;
  uint64_t decode_failures;
  double empirical_wer;
  uint64_t seed;
} WhamSimulationStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the most recent error on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wham_last_error_message(void);

/**
 * Creates a code from a row-major `rows x n` generator matrix.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_code_from_generator(uint32_t q,
                                         const uint32_t *block_lengths,
                                         const uint64_t *block_scalings,
                                         uintptr_t num_blocks,
                                         uintptr_t rows,
                                         const uint32_t *entries,
                                         struct WhamCode **out_code);

/**
 * Creates a code from a row-major `rows x n` parity-check matrix.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_code_from_parity_check(uint32_t q,
                                            const uint32_t *block_lengths,
                                            const uint64_t *block_scalings,
                                            uintptr_t num_blocks,
                                            uintptr_t rows,
                                            const uint32_t *entries,
                                            struct WhamCode **out_code);

/**
 * Releases a code handle; null is ignored.
 *
 * # Safety
 * The handle must come from a wham constructor and not be used afterwards.
 */
void wham_code_free(struct WhamCode *code);

/**
 * Block length n of the code, or 0 on a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
uintptr_t wham_code_length(const struct WhamCode *code);

/**
 * Dimension k of the code, or 0 on a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
uintptr_t wham_code_dimension(const struct WhamCode *code);

/**
 * Alphabet size q of the code, or 0 on a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
uint32_t wham_code_alphabet(const struct WhamCode *code);

/**
 * Minimum weighted-Hamming distance; `method` takes WhamDistanceMethod
 * values.
 *
 * # Safety
 * `code` must be a live handle; `out_distance` must be writable.
 */
enum WhamStatus wham_code_min_distance(const struct WhamCode *code,
                                       int32_t method,
                                       uint64_t *out_distance);

/**
 * Guaranteed error-correction radius tau of the code.
 *
 * # Safety
 * `code` must be a live handle; `out_tau` must be writable.
 */
enum WhamStatus wham_code_tau(const struct WhamCode *code, uint64_t *out_tau);

/**
 * Weighted-Hamming weight of a vector under the given block structure.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_weight(const uint32_t *block_lengths,
                            const uint64_t *block_scalings,
                            uintptr_t num_blocks,
                            const uint32_t *vector,
                            uintptr_t vector_len,
                            uint64_t *out_weight);

/**
 * Ball size of radius `radius`; fails with InvalidParameter when the count
 * does not fit in 64 bits.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_ball_size(uint32_t q,
                               const uint32_t *block_lengths,
                               const uint64_t *block_scalings,
                               uintptr_t num_blocks,
                               uint64_t radius,
                               uint64_t *out_size);

/**
 * All five bounds at one distance.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths; `out_bounds` must
 * be writable.
 */
enum WhamStatus wham_bounds(uint32_t q,
                            const uint32_t *block_lengths,
                            const uint64_t *block_scalings,
                            uintptr_t num_blocks,
                            uint64_t d,
                            struct WhamBounds *out_bounds);

/**
 * Builds a two-level code; `family` takes WhamFamily values.
 *
 * # Safety
 * `out_construction` must be writable.
 */
enum WhamStatus wham_construct(uint32_t q,
                               int32_t family,
                               uintptr_t n1,
                               uintptr_t n2,
                               struct WhamConstruction **out_construction);

/**
 * Releases a construction handle; null is ignored.
 *
 * # Safety
 * The handle must come from `wham_construct` and not be used afterwards.
 */
void wham_construction_free(struct WhamConstruction *construction);

/**
 * Block length n of the constructed code, or 0 on a null handle.
 *
 * # Safety
 * `construction` must be a live handle or null.
 */
uintptr_t wham_construction_length(const struct WhamConstruction *construction);

/**
 * Dimension k of the constructed code, or 0 on a null handle.
 *
 * # Safety
 * `construction` must be a live handle or null.
 */
uintptr_t wham_construction_dimension(const struct WhamConstruction *construction);

/**
 * Encodes a length-k message into the length-n codeword buffer.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_construction_encode(const struct WhamConstruction *construction,
                                         const uint32_t *message,
                                         uintptr_t message_len,
                                         uint32_t *out_codeword,
                                         uintptr_t codeword_len);

/**
 * Syndrome-decodes a received word; DecodeFailure when no table entry
 * matches.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths.
 */
enum WhamStatus wham_construction_decode(const struct WhamConstruction *construction,
                                         const uint32_t *word,
                                         uintptr_t word_len,
                                         uint32_t *out_codeword,
                                         uintptr_t codeword_len);

/**
 * Seeded Monte-Carlo simulation; `decoder` takes WhamDecoder values and
 * per-block symbol error rates are written to `out_block_rates`.
 *
 * # Safety
 * Pointers must reference arrays of the stated lengths; `out_stats` must
 * be writable.
 */
enum WhamStatus wham_simulate(const struct WhamCode *code,
                              const double *rhos,
                              uintptr_t num_rhos,
                              int32_t decoder,
                              uint64_t trials,
                              uint64_t seed,
                              struct WhamSimulationStats *out_stats,
                              double *out_block_rates,
                              uintptr_t block_rates_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WHAM_H */
