#ifndef LIEFAT_H
#define LIEFAT_H

/* Generated by cbindgen from the liefat-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum LiefatStatus {
  LIEFAT_STATUS_OK = 0,
  LIEFAT_STATUS_NULL_POINTER = 1,
  LIEFAT_STATUS_INVALID_UTF8 = 2,
  LIEFAT_STATUS_PARSE_ERROR = 3,
  LIEFAT_STATUS_DOMAIN_ERROR = 4,
} LiefatStatus;

/**
 * Opaque problem handle: a parsed spec together with the constructed
 * compact algebra.
 */
typedef struct LiefatProblem LiefatProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *liefat_version(void);

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *liefat_last_error(void);

/**
 * Builds a problem handle from a JSON spec. On success `*out` owns the
 * handle; release it with [`liefat_problem_free`].
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LiefatStatus liefat_problem_from_json(const char *json, struct LiefatProblem **out);

/**
 * Releases a problem handle. A null pointer is ignored.
 *
 * # Safety
 * `p` must have come from [`liefat_problem_from_json`] and not already be
 * freed.
 */
void liefat_problem_free(struct LiefatProblem *p);

/**
 * Frees a string returned by this library. A null pointer is ignored.
 *
 * # Safety
 * `s` must have been returned through a `char **` out-parameter of this
 * library and not already be freed.
 */
void liefat_string_free(char *s);

/**
 * Serializes the problem's root system.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_roots_json(const struct LiefatProblem *p, char **out_json);

/**
 * Builds the reductive decomposition and serializes its report.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_decompose_json(const struct LiefatProblem *p, char **out_json);

/**
 * Runs the combined wall + curvature fatness test. `vector_csv` may be
 * null, in which case the spec's `vector` payload is used. `*verdict`
 * becomes 0 for fat, 1 for not fat.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer; `vector_csv`
 * null or NUL-terminated.
 */
enum LiefatStatus liefat_fat_check(const struct LiefatProblem *p,
                                   const char *vector_csv,
                                   int32_t *verdict,
                                   char **out_json);

/**
 * Runs the full twistor certification. `*verdict` becomes 0 when
 * certified and 1 otherwise.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_twistor(const struct LiefatProblem *p, int32_t *verdict, char **out_json);

/**
 * Computes the translation threshold for the spec's polytope along
 * `x_sigma` of the spec's `sigma` payload. A blocked direction is a
 * negative verdict (1) with an error document, like the CLI.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_translate(const struct LiefatProblem *p,
                                   int32_t *verdict,
                                   char **out_json);

/**
 * Replays the wall-versus-determinant oracle on seeded samples.
 * `*verdict` becomes 0 on full agreement, 1 otherwise.
 *
 * # Safety
 * `p` must be a live handle; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_oracle(const struct LiefatProblem *p,
                                uint64_t samples,
                                uint64_t seed,
                                uint64_t bound,
                                int32_t *verdict,
                                char **out_json);

/**
 * Runs a built-in catalog entry by name; `*verdict` is 0 when the actual
 * verdict string equals the frozen expectation.
 *
 * # Safety
 * `name` must be NUL-terminated; `out_json` a valid pointer.
 */
enum LiefatStatus liefat_catalog_run(const char *name, int32_t *verdict, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEFAT_H */
