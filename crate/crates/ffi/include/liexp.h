#ifndef LIEXP_H
#define LIEXP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum LiexpStatus {
  LIEXP_STATUS_OK = 0,
  LIEXP_STATUS_NULL_POINTER = 1,
  LIEXP_STATUS_INVALID_ARGUMENT = 2,
  LIEXP_STATUS_DIMENSION_MISMATCH = 3,
  LIEXP_STATUS_NOT_NILPOTENT = 4,
  LIEXP_STATUS_PARSE = 5,
  LIEXP_STATUS_INTERNAL = 6,
  LIEXP_STATUS_PANIC = 7,
} LiexpStatus;

/**
 * Finite-dimensional Lie algebra given by structure constants.
 */
typedef struct LiexpAlgebra LiexpAlgebra;

/**
 * Result of one seeded experiment.
 */
typedef struct LiexpReport LiexpReport;

/**
 * Scalar summary of a report.
 */
typedef struct LiexpSummary {
  size_t dim;
  size_t nilpotency_class;
  size_t center_dim;
  size_t generators_count;
  size_t der_dim;
  bool der_nilpotent;
  size_t commutant_dim;
  size_t commutant_der_dim;
  bool commutant_der_nilpotent;
  size_t codim1_der_dim;
  bool codim1_der_nilpotent;
  bool formula_matches;
} LiexpSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *liexp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *liexp_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void liexp_string_free(char *s);

/**
 * Runs one experiment: `gens` is 2 or 3, `bound` the entry bound for the
 * random generators, `generic` requests nonzero superdiagonals.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum LiexpStatus liexp_run(size_t m,
                           uint8_t gens,
                           uint64_t seed,
                           uint32_t bound,
                           bool generic,
                           struct LiexpReport **out);

/**
 * Parses a report from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for one write.
 */
enum LiexpStatus liexp_report_from_json(const char *json, struct LiexpReport **out);

/**
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void liexp_report_free(struct LiexpReport *r);

/**
 * Pretty JSON form of the report, freed with [`liexp_string_free`].
 *
 * # Safety
 * `r` must be a live handle and `out` valid for one write.
 */
enum LiexpStatus liexp_report_to_json(const struct LiexpReport *r, char **out);

/**
 * # Safety
 * `r` must be a live handle and `out` valid for one write.
 */
enum LiexpStatus liexp_report_summary(const struct LiexpReport *r, struct LiexpSummary *out);

/**
 * Copies the lower central dimensions into `buf` (capacity `cap`) and
 * writes the full length to `len`. A short buffer receives a prefix.
 *
 * # Safety
 * `r` must be a live handle, `len` valid for one write, and `buf` valid for
 * `cap` writes unless `cap` is zero.
 */
enum LiexpStatus liexp_report_lower_dims(const struct LiexpReport *r,
                                         size_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * Lie algebra generated by `count` strictly upper triangular `order x order`
 * integer matrices, stored row-major one after another in `entries`.
 *
 * # Safety
 * `entries` must hold `count * order * order` values and `out` be valid for one write.
 */
enum LiexpStatus liexp_algebra_generate(size_t order,
                                        const int64_t *entries,
                                        size_t count,
                                        struct LiexpAlgebra **out);

/**
 * # Safety
 * `a` must come from this library and not have been freed.
 */
void liexp_algebra_free(struct LiexpAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` valid for one write.
 */
enum LiexpStatus liexp_algebra_dim(const struct LiexpAlgebra *a, size_t *out);

/**
 * Nilpotency class, or `NotNilpotent` when the lower central series stalls.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for one write.
 */
enum LiexpStatus liexp_algebra_class(const struct LiexpAlgebra *a, size_t *out);

/**
 * # Safety
 * `a` must be a live handle; `buf`, `cap`, `len` as for [`liexp_report_lower_dims`].
 */
enum LiexpStatus liexp_algebra_lower_dims(const struct LiexpAlgebra *a,
                                          size_t *buf,
                                          size_t cap,
                                          size_t *len);

/**
 * Dimension of Der(L) and whether Der(L) is nilpotent.
 *
 * # Safety
 * `a` must be a live handle; `der_dim` and `nilpotent` valid for one write.
 */
enum LiexpStatus liexp_algebra_derivations(const struct LiexpAlgebra *a,
                                           size_t *der_dim,
                                           bool *nilpotent);

/**
 * Dimensions of the homogeneous components of degree `1..=max_degree` of the
 * free Lie algebra on `gens` generators. Fails if a value exceeds 64 bits.
 *
 * # Safety
 * `buf` must be valid for `max_degree` writes.
 */
enum LiexpStatus liexp_witt_dims(uint32_t gens, uint32_t max_degree, uint64_t *buf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEXP_H */
