#ifndef FBCS_H
#define FBCS_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * `0` selects the corrected matrix entries, `1` the literal ones.
 */
#define FBCS_CONVENTION_CORRECTED 0

#define FBCS_CONVENTION_LITERAL 1

/**
 * Result codes.
 */
typedef enum FbcsStatus {
  FBCS_STATUS_OK = 0,
  FBCS_STATUS_NULL_POINTER = 1,
  FBCS_STATUS_INVALID_ARGUMENT = 2,
  FBCS_STATUS_SHAPE_MISMATCH = 3,
  FBCS_STATUS_CLOSED_FORM_UNAVAILABLE = 4,
  FBCS_STATUS_NOT_DIVERGENCE_FREE = 5,
  FBCS_STATUS_NON_CONVERGENCE = 6,
  FBCS_STATUS_INADMISSIBLE = 7,
  FBCS_STATUS_IO = 8,
  FBCS_STATUS_FORMAT = 9,
  FBCS_STATUS_PANIC = 99,
} FbcsStatus;

/**
 * Opaque four-component spectral field handle.
 */
typedef struct FbcsField FbcsField;

/**
 * Opaque grid handle.
 */
typedef struct FbcsGrid FbcsGrid;

/**
 * Physical parameters, field for field as in the Rust API.
 */
typedef struct FbcsPhysParams {
  double nu;
  double kappa;
  double gravity;
  double omega;
  double brunt;
  double alpha;
} FbcsPhysParams;

/**
 * Norm indices; `r = INFINITY` selects the supremum over blocks.
 */
typedef struct FbcsNormParams {
  double s;
  double q;
  double mu;
  double r;
} FbcsNormParams;

/**
 * Summary of a Picard solve.
 */
typedef struct FbcsContraction {
  double y_norm;
  double k_emp;
  double final_norm;
  double residual;
  uint32_t iterations;
  bool converged;
} FbcsContraction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message (NUL-terminated, truncated to `len`) and
 * returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
uintptr_t fbcs_last_error_message(char *buf, uintptr_t len);

/**
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum FbcsStatus fbcs_grid_new(uintptr_t n_per_axis, double box_length, struct FbcsGrid **out);

/**
 * # Safety
 * `grid` must come from [`fbcs_grid_new`] and not be used afterwards.
 */
void fbcs_grid_free(struct FbcsGrid *grid);

/**
 * Number of lattice modes `n^3`, or 0 for a null grid.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
uintptr_t fbcs_grid_len(const struct FbcsGrid *grid);

/**
 * # Safety
 * `grid` must be a live handle and `out` valid for writing a pointer.
 */
enum FbcsStatus fbcs_field_zeros(const struct FbcsGrid *grid, struct FbcsField **out);

/**
 * # Safety
 * `field` must come from this library and not be used afterwards.
 */
void fbcs_field_free(struct FbcsField *field);

/**
 * Forward transform of physical samples (`len = 8 n^3` doubles).
 *
 * # Safety
 * `samples` must be valid for `len` doubles; `out` valid for a pointer.
 */
enum FbcsStatus fbcs_field_from_physical(const struct FbcsGrid *grid,
                                         const double *samples,
                                         uintptr_t len,
                                         struct FbcsField **out);

/**
 * Inverse transform into `dst` (`len = 8 n^3` doubles).
 *
 * # Safety
 * `field` must be live; `dst` valid for `len` doubles.
 */
enum FbcsStatus fbcs_field_to_physical(const struct FbcsField *field, double *dst, uintptr_t len);

/**
 * Field from spectral coefficients (`len = 8 n^3` doubles).
 *
 * # Safety
 * `coeffs` must be valid for `len` doubles; `out` valid for a pointer.
 */
enum FbcsStatus fbcs_field_from_coeffs(const struct FbcsGrid *grid,
                                       const double *coeffs,
                                       uintptr_t len,
                                       bool real_valued,
                                       struct FbcsField **out);

/**
 * # Safety
 * `field` must be live; `dst` valid for `len` doubles.
 */
enum FbcsStatus fbcs_field_coeffs(const struct FbcsField *field, double *dst, uintptr_t len);

/**
 * Relative divergence of the velocity part.
 *
 * # Safety
 * `field` must be live; `out` valid for a double.
 */
enum FbcsStatus fbcs_field_divergence_defect(const struct FbcsField *field, double *out);

/**
 * Closed-form semigroup symbol at `xi` (3 doubles), row-major into `dst` (16 doubles).
 *
 * # Safety
 * `xi` valid for 3 doubles, `params` for one struct, `dst` for 16 doubles.
 */
enum FbcsStatus fbcs_semigroup_symbol(const double *xi,
                                      double t,
                                      const struct FbcsPhysParams *params,
                                      int32_t convention_code,
                                      double *dst);

/**
 * Dense matrix exponential of the generator at `xi`, row-major (16 doubles).
 *
 * # Safety
 * As for [`fbcs_semigroup_symbol`].
 */
enum FbcsStatus fbcs_oracle_symbol(const double *xi,
                                   double t,
                                   const struct FbcsPhysParams *params,
                                   double *dst);

/**
 * Helmholtz projector at `xi`, row-major (16 doubles).
 *
 * # Safety
 * `xi` valid for 3 doubles, `dst` for 16.
 */
enum FbcsStatus fbcs_helmholtz_symbol(const double *xi, double *dst);

/**
 * `L = max(2, |omega|/N, N/|omega|)`.
 *
 * # Safety
 * `params` and `out` must be valid.
 */
enum FbcsStatus fbcs_coupling_bound(const struct FbcsPhysParams *params, double *out);

/**
 * `S(t) field` into a new handle.
 *
 * # Safety
 * `field`, `params` live; `out` valid for a pointer.
 */
enum FbcsStatus fbcs_apply_semigroup(const struct FbcsField *field,
                                     double t,
                                     const struct FbcsPhysParams *params,
                                     int32_t convention_code,
                                     struct FbcsField **out);

/**
 * Fourier-Besov-Morrey norm of a field.
 *
 * # Safety
 * `field`, `norm` live; `out` valid for a double.
 */
enum FbcsStatus fbcs_fbm_norm(const struct FbcsField *field,
                              const struct FbcsNormParams *norm,
                              double *out);

/**
 * Picard solve on `steps` uniform steps over `[0, horizon]`. On success
 * `out_final` receives the solution at `horizon`; `report` is filled
 * whenever it is non-null, including on non-convergence.
 *
 * # Safety
 * Handles and structs live; `report` null or valid; `out_final` valid for a pointer.
 */
enum FbcsStatus fbcs_picard_solve(const struct FbcsField *v0,
                                  const struct FbcsPhysParams *params,
                                  const struct FbcsNormParams *norm,
                                  double horizon,
                                  uintptr_t steps,
                                  double tol,
                                  uintptr_t max_iter,
                                  struct FbcsContraction *report,
                                  struct FbcsField **out_final);

/**
 * # Safety
 * `field` live; `path` a NUL-terminated UTF-8 string.
 */
enum FbcsStatus fbcs_snapshot_write(const struct FbcsField *field, double time, const char *path);

/**
 * Reads a snapshot into a new field handle; `grid_out` (optional) receives
 * a new grid handle matching the file.
 *
 * # Safety
 * `path` NUL-terminated; `out` valid for a pointer; `time` and `grid_out` null or valid.
 */
enum FbcsStatus fbcs_snapshot_read(const char *path,
                                   struct FbcsField **out,
                                   double *time,
                                   struct FbcsGrid **grid_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FBCS_H */
