#ifndef CHARFORGE_H
#define CHARFORGE_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Product cases.
 */
typedef enum CfCase {
  CF_CASE_SUM_OF_LINEARS = 1,
  CF_CASE_MIXED_LINEAR_AND_DEGREE_P = 2,
  CF_CASE_ALL_DEGREE_P = 3,
  CF_CASE_IRREDUCIBLE = 4,
} CfCase;

/**
 * Result codes.
 */
typedef enum CfStatus {
  CF_STATUS_OK = 0,
  CF_STATUS_NULL_ARGUMENT = 1,
  CF_STATUS_INVALID_UTF8 = 2,
  CF_STATUS_PARSE = 3,
  CF_STATUS_CAP_EXCEEDED = 4,
  CF_STATUS_ROW_OUT_OF_RANGE = 5,
  CF_STATUS_HYPOTHESIS_VIOLATION = 6,
  CF_STATUS_THEOREM_VIOLATION = 7,
  CF_STATUS_NOT_A_CHARACTER = 8,
  CF_STATUS_UNSUPPORTED = 9,
  CF_STATUS_INTERNAL = 10,
  CF_STATUS_PANIC = 11,
} CfStatus;

/**
 * A constructed group.
 */
typedef struct CfGroup CfGroup;

/**
 * The character table of a group.
 */
typedef struct CfTable CfTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. Valid until the next failing call.
 */
const char *cf_last_error_message(void);

/**
 * Builds a group from a spec string. `cap = 0` selects the default closure cap.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a writable pointer.
 */
enum CfStatus cf_group_from_spec(const char *spec,
                                 size_t cap,
                                 bool stretch,
                                 struct CfGroup **out_group);

/**
 * # Safety
 * `group` must be null or a handle from `cf_group_from_spec`, not yet freed.
 */
void cf_group_free(struct CfGroup *group);

/**
 * Group order, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
size_t cf_group_order(const struct CfGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `out_table` writable.
 */
enum CfStatus cf_table_new(const struct CfGroup *group, struct CfTable **out_table);

/**
 * # Safety
 * `table` must be null or a handle from `cf_table_new`, not yet freed.
 */
void cf_table_free(struct CfTable *table);

/**
 * Number of irreducible characters (= classes), or 0 for a null handle.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
size_t cf_table_rows(const struct CfTable *table);

/**
 * # Safety
 * `table` must be a live handle and `out_degree` writable.
 */
enum CfStatus cf_table_degree(const struct CfTable *table, size_t row, uint64_t *out_degree);

/**
 * Decomposes the product of two rows. Writes `eta` and up to `capacity`
 * `(row, multiplicity)` pairs in ascending row order; `rows`/`mults` may be null
 * when `capacity` is 0.
 *
 * # Safety
 * `rows` and `mults` must hold `capacity` elements; `out_eta` must be writable.
 */
enum CfStatus cf_decompose_product(const struct CfTable *table,
                                   size_t chi,
                                   size_t psi,
                                   size_t *rows,
                                   uint64_t *mults,
                                   size_t capacity,
                                   size_t *out_eta);

/**
 * Classifies `chi psi` for `chi(1) = p`.
 *
 * # Safety
 * `table` must be a live handle; `out_case` and `out_eta` writable.
 */
enum CfStatus cf_classify_product(const struct CfTable *table,
                                  size_t chi,
                                  size_t psi,
                                  uint64_t p,
                                  enum CfCase *out_case,
                                  size_t *out_eta);

/**
 * Runs the full product-classification and lemma checks on a group.
 *
 * # Safety
 * `group` must be a live handle; `out_pass` and `out_pairs` writable.
 */
enum CfStatus cf_verify(const struct CfGroup *group, uint64_t p, bool *out_pass, size_t *out_pairs);

/**
 * The table as a JSON document; release with `cf_string_free`. Null on failure.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
char *cf_table_json(const struct CfTable *table);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARFORGE_H */
