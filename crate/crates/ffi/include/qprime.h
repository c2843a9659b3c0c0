#ifndef QPRIME_H
#define QPRIME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_DOMAIN = 2,
  QP_STATUS_CONFIG = 3,
  QP_STATUS_NOT_ON_PRIME_MODULI = 4,
  QP_STATUS_NO_FACTORS = 5,
  QP_STATUS_NOT_QUASI_PRIME = 6,
  QP_STATUS_INVALID = 7,
  QP_STATUS_RESOURCE = 8,
  QP_STATUS_OVERFLOW = 9,
  QP_STATUS_INTERNAL = 10,
  QP_STATUS_BUFFER_TOO_SMALL = 11,
  QP_STATUS_PANIC = 12,
} QpStatus;

typedef enum QpStage {
  QP_STAGE_PASS = 0,
  QP_STAGE_NOT_ODD = 1,
  QP_STAGE_LAST_DIGIT = 2,
  QP_STAGE_DIGITAL_ROOT369 = 3,
  QP_STAGE_NOT_PRIME_MODULUS = 4,
  QP_STAGE_GRID_SEARCH = 5,
  QP_STAGE_SPECIAL_SMALL = 6,
  QP_STAGE_INPUT_RANGE = 7,
} QpStage;

typedef enum QpStrategy {
  QP_STRATEGY_ASCENDING = 0,
  QP_STRATEGY_BALANCED = 1,
} QpStrategy;

typedef enum QpKind {
  QP_KIND_PRIME = 0,
  QP_KIND_PRIME_SPECIAL_SMALL = 1,
  QP_KIND_COMPOSITE = 2,
  QP_KIND_INVALID = 3,
} QpKind;

// Opaque sieve handle.
typedef struct QpPrimeTable QpPrimeTable;

// Opaque wheel handle.
typedef struct QpWheel QpWheel;

// Outcome of `qp_is_prime`.
//
// When `has_witness` is set, `witness_a * witness_b == n`. `grid_i` and
// `grid_j` are the 1-based grid indices of a grid witness, 0 otherwise.
typedef struct QpVerdict {
  uint64_t n;
  enum QpKind kind;
  enum QpStage stage;
  bool has_witness;
  uint64_t witness_a;
  uint64_t witness_b;
  uint64_t grid_i;
  uint64_t grid_j;
} QpVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never NULL; do not free.
const char *qp_status_message(enum QpStatus status);

// Library version as a static NUL-terminated string.
const char *qp_version(void);

enum QpStatus qp_digital_root(uint64_t n, uint8_t *out);

// Spoke of `n` on a `sides`-sided wheel, in `1..=sides`.
enum QpStatus qp_modulus_of(uint64_t n, uint64_t sides, uint64_t *out);

// Writes `1` to `out` if `modulus` is a prime spoke of the wheel, else `0`.
enum QpStatus qp_is_prime_modulus(uint64_t sides, uint64_t modulus, bool *out);

enum QpStatus qp_axis_value(uint64_t k, uint64_t *out);

// Axis index of `v`; `QP_STATUS_DOMAIN` when `v` is not an axis value.
enum QpStatus qp_axis_index(uint64_t v, uint64_t *out);

enum QpStatus qp_grid_value(uint64_t i, uint64_t j, uint64_t *out);

// Grid membership. `found` is false exactly when `n` is prime; otherwise
// `i <= j` index the cell holding `n`.
enum QpStatus qp_grid_contains(uint64_t n, bool *found, uint64_t *i, uint64_t *j);

// Prefilter outcome: `QP_STAGE_PASS` or the first rejecting stage.
enum QpStatus qp_prefilter(uint64_t n, enum QpStage *out);

enum QpStatus qp_is_prime(uint64_t n, enum QpStrategy strategy, struct QpVerdict *out);

enum QpStatus qp_factor_on_grid(uint64_t n, enum QpStrategy strategy, uint64_t *a, uint64_t *b);

// Prime factors of `n`, ascending, into `buf[0..*len]`.
//
// If `cap` is too small, `*len` receives the required length and
// `QP_STATUS_BUFFER_TOO_SMALL` is returned. At most 63 factors are ever needed.
enum QpStatus qp_full_factorize(uint64_t n, uint64_t *buf, size_t cap, size_t *len);

enum QpStatus qp_survivor_density(uint64_t limit, uint64_t *survivors, double *fraction);

// Number of primality/factorization mismatches against the sieve on `[2, limit]`.
enum QpStatus qp_verify_range(uint64_t limit, enum QpStrategy strategy, uint64_t *mismatches);

// Builds a sieve up to `limit`. Release with `qp_sieve_free`.
enum QpStatus qp_sieve_new(uint64_t limit, struct QpPrimeTable **out);

enum QpStatus qp_sieve_is_prime(const struct QpPrimeTable *table, uint64_t n, bool *out);

enum QpStatus qp_sieve_count(const struct QpPrimeTable *table, uint64_t *out);

// Frees a sieve handle. NULL is ignored.
void qp_sieve_free(struct QpPrimeTable *table);

// Lays out and cross-checks a wheel. Release with `qp_wheel_free`.
enum QpStatus qp_wheel_new(uint64_t sides, uint64_t limit, struct QpWheel **out);

enum QpStatus qp_wheel_rings(const struct QpWheel *wheel, uint64_t *out);

// Renders the wheel as an SVG document. Free the string with `qp_string_free`.
enum QpStatus qp_wheel_svg(const struct QpWheel *wheel, char **out);

// Frees a wheel handle. NULL is ignored.
void qp_wheel_free(struct QpWheel *wheel);

// Frees a string returned by this library. NULL is ignored.
void qp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPRIME_H */
