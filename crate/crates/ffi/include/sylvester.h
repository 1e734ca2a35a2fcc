#ifndef SYLVESTER_H
#define SYLVESTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first six match the command line exit codes.
 */
typedef enum SylStatus {
  SYL_STATUS_OK = 0,
  SYL_STATUS_MALFORMED = 1,
  SYL_STATUS_NOT_REAL = 2,
  SYL_STATUS_HALF_INTEGER = 3,
  SYL_STATUS_GRID_TOO_SMALL = 4,
  SYL_STATUS_VERIFICATION_FAILED = 5,
  SYL_STATUS_NULL_POINTER = 6,
  SYL_STATUS_BUFFER_TOO_SMALL = 7,
  SYL_STATUS_PANIC = 8,
} SylStatus;

/**
 * Majorana constellation of a state.
 */
typedef struct SylConstellation SylConstellation;

/**
 * Degree, unit directions and amplitude of a real harmonic.
 */
typedef struct SylMultipoles SylMultipoles;

/**
 * Spin state `|j, m>` coefficients.
 */
typedef struct SylState SylState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *syl_last_error(void);

/**
 * Library version as a static string.
 */
const char *syl_version(void);

/**
 * Runs the seeded property suite at degree `two_j / 2`. Returns
 * `SYL_STATUS_VERIFICATION_FAILED` when any check fails; the JSON report
 * goes to `report` when it is not null.
 *
 * # Safety
 * `report` must be null or writable.
 */
enum SylStatus syl_verify(uint32_t two_j, size_t trials, uint64_t seed, char **report);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void syl_string_free(char *s);

/**
 * New state of degree `two_j / 2` from `2 * (two_j + 1)` interleaved doubles.
 *
 * # Safety
 * `coeffs` must point to `len` readable doubles; `out` must be writable.
 */
enum SylStatus syl_state_new(uint32_t two_j,
                             const double *coeffs,
                             size_t len,
                             struct SylState **out);

/**
 * Parses a state from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SylStatus syl_state_from_json(const char *json, struct SylState **out);

/**
 * Serializes a state. Release the result with [`syl_string_free`].
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_state_to_json(const struct SylState *state, char **out);

/**
 * Doubled degree `2j`, or 0 for a null handle.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
uint32_t syl_state_two_j(const struct SylState *state);

/**
 * Copies the interleaved coefficients into `out`, which must hold `2 * (2j + 1)` doubles.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to `len` writable doubles.
 */
enum SylStatus syl_state_coefficients(const struct SylState *state, double *out, size_t len);

/**
 * Rotates a state by z-y-z Euler angles in radians.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_state_rotate(const struct SylState *state,
                                double alpha,
                                double beta,
                                double gamma,
                                struct SylState **out);

/**
 * Value of the state's function at `(theta, phi)`.
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must be writable.
 */
enum SylStatus syl_state_eval(const struct SylState *state,
                              double theta,
                              double phi,
                              double *re,
                              double *im);

/**
 * # Safety
 * `state` must be null or a handle not yet freed.
 */
void syl_state_free(struct SylState *state);

/**
 * Multipole directions of a real state of integer degree.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_decompose(const struct SylState *state, double tol, struct SylMultipoles **out);

/**
 * Rebuilds the state on an `n_theta` by `n_phi` grid; pass zeros for the default grid.
 *
 * # Safety
 * `multipoles` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_reconstruct(const struct SylMultipoles *multipoles,
                               size_t n_theta,
                               size_t n_phi,
                               struct SylState **out);

/**
 * Multipole set from `3 * degree` direction components and an amplitude.
 *
 * # Safety
 * `directions` must point to `len` readable doubles; `out` must be writable.
 */
enum SylStatus syl_multipoles_new(uint32_t degree,
                                  const double *directions,
                                  size_t len,
                                  double amplitude,
                                  struct SylMultipoles **out);

/**
 * Parses a multipole set from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SylStatus syl_multipoles_from_json(const char *json, struct SylMultipoles **out);

/**
 * Serializes a multipole set. Release the result with [`syl_string_free`].
 *
 * # Safety
 * `multipoles` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_multipoles_to_json(const struct SylMultipoles *multipoles, char **out);

/**
 * Degree `j`, or 0 for a null handle.
 *
 * # Safety
 * `multipoles` must be null or a live handle.
 */
uint32_t syl_multipoles_degree(const struct SylMultipoles *multipoles);

/**
 * Amplitude, or NaN for a null handle.
 *
 * # Safety
 * `multipoles` must be null or a live handle.
 */
double syl_multipoles_amplitude(const struct SylMultipoles *multipoles);

/**
 * Copies the directions as `x, y, z` triples; `out` must hold `3 * degree` doubles.
 *
 * # Safety
 * `multipoles` must be a live handle; `out` must point to `len` writable doubles.
 */
enum SylStatus syl_multipoles_directions(const struct SylMultipoles *multipoles,
                                         double *out,
                                         size_t len);

/**
 * # Safety
 * `multipoles` must be null or a handle not yet freed.
 */
void syl_multipoles_free(struct SylMultipoles *multipoles);

/**
 * Majorana constellation of a nonzero state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum SylStatus syl_constellation_of(const struct SylState *state, struct SylConstellation **out);

/**
 * Number of stars, `2j`, or 0 for a null handle.
 *
 * # Safety
 * `constellation` must be null or a live handle.
 */
size_t syl_constellation_len(const struct SylConstellation *constellation);

/**
 * Copies the stars as unit vectors, `x, y, z` per star.
 *
 * # Safety
 * `constellation` must be a live handle; `out` must point to `len` writable doubles.
 */
enum SylStatus syl_constellation_points(const struct SylConstellation *constellation,
                                        double *out,
                                        size_t len);

/**
 * # Safety
 * `constellation` must be null or a handle not yet freed.
 */
void syl_constellation_free(struct SylConstellation *constellation);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYLVESTER_H */
