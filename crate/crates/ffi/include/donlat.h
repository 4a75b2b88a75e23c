#ifndef DONLAT_H
#define DONLAT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DonlatStatus {
  DONLAT_STATUS_OK = 0,
  /**
   * Well-formed input that fails validation, or a class that is not a curve.
   */
  DONLAT_STATUS_INVALID = 1,
  DONLAT_STATUS_MALFORMED = 2,
  DONLAT_STATUS_NULL_POINTER = 3,
  DONLAT_STATUS_PANIC = 4,
} DonlatStatus;

typedef enum DonlatVerdict {
  DONLAT_VERDICT_PARTITION_CASE = 0,
  DONLAT_VERDICT_ODD_IH = 1,
  DONLAT_VERDICT_INADMISSIBLE = 2,
} DonlatVerdict;

/**
 * A class vector in the Donaldson basis.
 */
typedef struct DonlatClass DonlatClass;

/**
 * A cycle of rational curves.
 */
typedef struct DonlatCycle DonlatCycle;

/**
 * A cycle with attached chains.
 */
typedef struct DonlatDivisor DonlatDivisor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *donlat_last_error(void);

void donlat_string_free(char *s);

/**
 * Copy `len` coefficients into a new class.
 */
enum DonlatStatus donlat_class_new(const int64_t *coeffs, size_t len, struct DonlatClass **out);

void donlat_class_free(struct DonlatClass *c);

/**
 * Rank of the class, 0 for a null handle.
 */
size_t donlat_class_rank(const struct DonlatClass *c);

/**
 * Copy the coefficients into `buf`, which must hold at least the rank.
 */
enum DonlatStatus donlat_class_coeffs(const struct DonlatClass *c, int64_t *buf, size_t len);

enum DonlatStatus donlat_class_intersect(const struct DonlatClass *a,
                                         const struct DonlatClass *b,
                                         int64_t *out);

/**
 * `{"kind":"A"|"B"|"none",…}`; returns `DONLAT_STATUS_INVALID` when the
 * class is not a curve (the JSON is still written).
 */
enum DonlatStatus donlat_class_classify_json(const struct DonlatClass *c, char **out);

enum DonlatStatus donlat_cycle_from_json(const char *json, struct DonlatCycle **out);

void donlat_cycle_free(struct DonlatCycle *c);

/**
 * Number of curves, 0 for a null handle.
 */
size_t donlat_cycle_len(const struct DonlatCycle *c);

/**
 * Writes the violation report when `report` is not null.
 */
enum DonlatStatus donlat_cycle_validate(const struct DonlatCycle *c, char **report);

/**
 * `#C - C²` and its verdict against the rank.
 */
enum DonlatStatus donlat_cycle_betti(const struct DonlatCycle *c,
                                     enum DonlatVerdict *verdict,
                                     int64_t *value);

/**
 * Smooth the node after position `i`. Writes
 * `{"cycle":…,"exceptional":[…]}`, or `{"elliptic":…,"exceptional":null}`
 * for a single curve. `next` receives the new cycle when it is not null.
 */
enum DonlatStatus donlat_cycle_smooth(const struct DonlatCycle *c,
                                      size_t i,
                                      char **json,
                                      struct DonlatCycle **next);

enum DonlatStatus donlat_divisor_from_json(const char *json, struct DonlatDivisor **out);

void donlat_divisor_free(struct DonlatDivisor *d);

/**
 * Writes `{"violations":…,"trace":…,"order":…}` when `report` is not null.
 */
enum DonlatStatus donlat_divisor_validate(const struct DonlatDivisor *d, char **report);

/**
 * The named fixture as JSON.
 */
enum DonlatStatus donlat_fixture_json(const char *name, char **out);

/**
 * Census table for rank `n` as TSV. `cap` 0 means the default cap.
 */
enum DonlatStatus donlat_census_tsv(size_t n, size_t cap, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DONLAT_H */
