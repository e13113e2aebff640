#ifndef POLYKERNEL_H
#define POLYKERNEL_H

#include <stddef.h>
#include <stdint.h>

/*
 Status codes; the numerical ones match the command-line exit codes.
 */
typedef enum PkStatus {
  PK_OK = 0,
  PK_FAIL = 1,
  PK_INVALID_INPUT = 2,
  PK_EXCLUSION = 3,
  PK_NO_CONVERGENCE = 4,
  PK_TRUNCATION_INSUFFICIENT = 5,
  PK_NULL_POINTER = 6,
  PK_OVERFLOW = 7,
  PK_PANIC = 8,
} PkStatus;

/*
 Theorem selector for `pk_verify`.
 */
typedef enum PkTheorem {
  PK_STANDARD = 0,
  PK_HOPF = 1,
  PK_BA = 2,
  PK_B2A = 3,
  PK_CA2 = 4,
} PkTheorem;

/*
 Outcome of an addition-theorem check.
 */
typedef struct PkReport PkReport;

/*
 Parsed polyspherical tree.
 */
typedef struct PkTree PkTree;

/*
 Value of a truncated series.
 */
typedef struct PkSeries {
  double value;
  size_t terms_used;
  double last_term_magnitude;
} PkSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *pk_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *pk_version(void);

/*
 Phase-free Legendre function of the second kind e^{−iπμ} Q_ν^μ(z), z > 1.

 # Safety
 `out` must be valid for writes.
 */
enum PkStatus pk_legendre_q_hat(double nu, double mu, double z, double *out);

/*
 Jacobi expansion of (z − x)^{−ν}.

 # Safety
 `out` must be valid for writes.
 */
enum PkStatus pk_euler_kernel_jacobi(double nu,
                                     double alpha,
                                     double beta,
                                     double z,
                                     double x,
                                     double tol,
                                     size_t max_terms,
                                     struct PkSeries *out);

/*
 Chebyshev expansion of (z − x)^{−ν}.

 # Safety
 `out` must be valid for writes.
 */
enum PkStatus pk_euler_kernel_chebyshev(double nu,
                                        double z,
                                        double x,
                                        double tol,
                                        size_t max_terms,
                                        struct PkSeries *out);

/*
 Gegenbauer expansion of ‖x − x′‖^ν on R^d from r, r′ and cos γ.

 # Safety
 `out` must be valid for writes.
 */
enum PkStatus pk_multipole_power(uint32_t d,
                                 double nu,
                                 double r,
                                 double rp,
                                 double cos_gamma,
                                 double tol,
                                 size_t max_terms,
                                 struct PkSeries *out);

/*
 Azimuthal Fourier expansion of ‖x − x′‖^ν from toroidal data.

 # Safety
 `out` must be valid for writes.
 */
enum PkStatus pk_azimuthal_power(double nu,
                                 double chi,
                                 double two_rr,
                                 double delta_phi,
                                 double tol,
                                 size_t max_terms,
                                 struct PkSeries *out);

/*
 Number of trees and of mirror classes with `d` leaves. Fails with
 `PkOverflow` once the counts leave 64 bits.

 # Safety
 `trees` and `classes` must be valid for writes.
 */
enum PkStatus pk_tree_counts(size_t d, uint64_t *trees, uint64_t *classes);

/*
 Parses a tree spelling such as "b^2a" into a new handle.

 # Safety
 `spec` must be a NUL-terminated string and `out` valid for writes.
 */
enum PkStatus pk_tree_parse(const char *spec, struct PkTree **out);

/*
 Releases a tree; null is ignored.

 # Safety
 `tree` must come from `pk_tree_parse` and not be used afterwards.
 */
void pk_tree_free(struct PkTree *tree);

/*
 Ambient dimension of a tree, or 0 for null.

 # Safety
 `tree` must be null or a live handle.
 */
size_t pk_tree_dimension(const struct PkTree *tree);

/*
 Writes the canonical spelling into `buf` (capacity `len`, NUL included).
 `needed` receives the required capacity; a short buffer gives
 `PkInvalidInput` and leaves `buf` untouched.

 # Safety
 `tree` must be a live handle, `buf` valid for `len` bytes (or null when
 `len` is 0) and `needed` null or valid for writes.
 */
enum PkStatus pk_tree_format(const struct PkTree *tree, char *buf, size_t len, size_t *needed);

/*
 Checks one addition theorem. `order` is d for `PkStandard`, q for
 `PkHopf` and ignored otherwise; `caps` may be null (default caps).
 Angle arrays follow the command-line order: polar angles, then azimuths.

 # Safety
 `angles` and `angles_p` must hold `n_angles` values, `caps` null or
 `n_caps` values, and `out` be valid for writes.
 */
enum PkStatus pk_verify(enum PkTheorem theorem,
                        uint32_t order,
                        double nu,
                        int64_t m,
                        double r,
                        double rp,
                        const double *angles,
                        const double *angles_p,
                        size_t n_angles,
                        const size_t *caps,
                        size_t n_caps,
                        double tol,
                        struct PkReport **out);

/*
 Releases a report; null is ignored.

 # Safety
 `report` must come from `pk_verify` and not be used afterwards.
 */
void pk_report_free(struct PkReport *report);

/*
 `PkOk`, `PkFail` or `PkTruncationInsufficient` for a report.

 # Safety
 `report` must be a live handle.
 */
enum PkStatus pk_report_status(const struct PkReport *report);

/*
 Reads lhs, rhs, relative error and tail estimate; any out pointer may be null.

 # Safety
 `report` must be a live handle; non-null out pointers valid for writes.
 */
enum PkStatus pk_report_values(const struct PkReport *report,
                               double *lhs,
                               double *rhs,
                               double *rel_err,
                               double *tail);

/*
 Toroidal parameter χ of the configuration in a report.

 # Safety
 `report` must be null or a live handle.
 */
double pk_report_chi(const struct PkReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYKERNEL_H */
