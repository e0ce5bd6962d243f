/* C interface to the polmat polarization-matrix library. */

#ifndef POLMAT_H
#define POLMAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum PolmatStatus {
  PolmatStatus_Ok = 0,
  PolmatStatus_NullPointer = 1,
  PolmatStatus_InvalidArgument = 2,
  /**
   * The requested quantity does not exist for this input (undefined
   * phase, missing crossing).
   */
  PolmatStatus_UndefinedValue = 3,
  PolmatStatus_NonFinite = 4,
  /**
   * An internal invariant failed; results must not be trusted.
   */
  PolmatStatus_InternalError = 5,
} PolmatStatus;

/**
 * Opaque handle to a tabulated zero-point radial profile.
 */
typedef struct PolmatProfile PolmatProfile;

/**
 * Complex number crossing the boundary as two doubles.
 */
typedef struct PolmatComplex {
  double re;
  double im;
} PolmatComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string.
 */
const char *polmat_version(void);

/**
 * Polarization matrix P_E + P_B of one explicit field sample.
 *
 * `e` and `b` hold three complex Cartesian components each; `out`
 * receives the nine row-major matrix entries.
 *
 * # Safety
 *
 * `e` and `b` must point to arrays of three `PolmatComplex`, `out` to an
 * array of nine.
 */
enum PolmatStatus polmat_gpm_total(const struct PolmatComplex *e,
                                   const struct PolmatComplex *b,
                                   struct PolmatComplex *out);

/**
 * Multipole polarization blocks at one spherical point.
 *
 * Writes the electric energy density, the three-component flux vector
 * conj(E) x B and the nine row-major matrix entries. `kind` is 'E' or
 * 'M'; angles are radians.
 *
 * # Safety
 *
 * `out_w_e` must point to one double, `out_flux` to three
 * `PolmatComplex`, `out_matrix` to nine.
 */
enum PolmatStatus polmat_multipole_gpm(char kind,
                                       double k,
                                       uint32_t j,
                                       int32_t m,
                                       double r,
                                       double theta,
                                       double phi,
                                       double *out_w_e,
                                       struct PolmatComplex *out_flux,
                                       struct PolmatComplex *out_matrix);

/**
 * Dimensionless zero-point density Z of one mode family at x = kr.
 *
 * # Safety
 *
 * `out` must point to one double.
 */
enum PolmatStatus polmat_zpo_density(char kind, uint32_t j, double x, double *out);

/**
 * Exact vacuum-energy ratio of a comma-separated mode list ("E1,M1")
 * relative to two plane-wave polarizations.
 *
 * # Safety
 *
 * `modes` must be a NUL-terminated string; `out_numerator` and
 * `out_denominator` must each point to one i64.
 */
enum PolmatStatus polmat_zpo_ratio(const char *modes,
                                   int64_t *out_numerator,
                                   int64_t *out_denominator);

/**
 * Tabulate Z of one mode family over a uniform grid of `samples` points
 * from `x_min` to `x_max` and return an owned handle through `out`.
 *
 * # Safety
 *
 * `out` must point to one handle pointer. The handle must be released
 * with `polmat_profile_free`.
 */
enum PolmatStatus polmat_profile_new(char kind,
                                     uint32_t j,
                                     double x_min,
                                     double x_max,
                                     uintptr_t samples,
                                     struct PolmatProfile **out);

/**
 * Number of grid points held by a profile; zero for a null handle.
 *
 * # Safety
 *
 * `profile` must be null or a live handle from `polmat_profile_new`.
 */
uintptr_t polmat_profile_len(const struct PolmatProfile *profile);

/**
 * Grid point `index` of a profile.
 *
 * # Safety
 *
 * `profile` must be a live handle; `out_x` and `out_z` must each point
 * to one double.
 */
enum PolmatStatus polmat_profile_point(const struct PolmatProfile *profile,
                                       uintptr_t index,
                                       double *out_x,
                                       double *out_z);

/**
 * First grid abscissa where Z drops below a quarter of its origin value;
 * `UndefinedValue` when the profile never crosses.
 *
 * # Safety
 *
 * `profile` must be a live handle; `out` must point to one double.
 */
enum PolmatStatus polmat_profile_crossing(const struct PolmatProfile *profile, double *out);

/**
 * Release a profile handle; a null handle is a no-op.
 *
 * # Safety
 *
 * `profile` must be null or a handle from `polmat_profile_new` that has
 * not been freed yet.
 */
void polmat_profile_free(struct PolmatProfile *profile);

/**
 * Run the numerical self-check suite; returns the number of failed
 * checks, or `u32::MAX` if the suite itself panicked.
 */
uint32_t polmat_validate(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POLMAT_H */
