#ifndef QMETRO_H
#define QMETRO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QmStatus {
  QM_STATUS_OK = 0,
  QM_STATUS_DOMAIN = 1,
  QM_STATUS_CONFIG = 2,
  QM_STATUS_NON_CONVERGENCE = 3,
  QM_STATUS_NON_FINITE = 4,
  QM_STATUS_CROSS_CHECK = 5,
  QM_STATUS_IO = 6,
  QM_STATUS_NULL_POINTER = 7,
  QM_STATUS_PANIC = 8,
} QmStatus;

typedef enum QmMethod {
  QM_METHOD_QUAD_REDUCED = 0,
  QM_METHOD_QUAD_NAIVE = 1,
  QM_METHOD_MONTE_CARLO = 2,
  QM_METHOD_CLOSED_FORM = 3,
  QM_METHOD_GAUSSIAN_APPROX = 4,
} QmMethod;

/*
 Opaque Monte Carlo settings.
 */
typedef struct QmMcSpec QmMcSpec;

/*
 Opaque quadrature settings.
 */
typedef struct QmQuadratureSpec QmQuadratureSpec;

typedef struct QmConstants {
  double euler_gamma;
  double c_qpea;
  double c_sql_ent;
  double c_probe;
  double c_sep_sep;
  double c_sep_sep_uncertainty;
} QmConstants;

/*
 A mutual-information estimate. `t == 0` means the strategy has no digit
 register; `seed` is meaningful only when `has_seed` is set.
 */
typedef struct QmMiResult {
  double bits;
  double err;
  enum QmMethod method;
  uint64_t n;
  uint64_t d;
  uint32_t t;
  bool has_seed;
  uint64_t seed;
} QmMiResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy the calling thread's last error message into `buf` (NUL-terminated,
 truncated to `len - 1` bytes). Returns the untruncated length in bytes.

 # Safety
 `buf` must be null or valid for `len` bytes of writes.
 */
size_t qm_last_error_message(char *buf, size_t len);

/*
 Create quadrature settings. `out` receives a handle to free with
 [`qm_quadrature_spec_free`].

 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_quadrature_spec_new(double rel_tol,
                                     double abs_tol,
                                     uint32_t max_depth,
                                     struct QmQuadratureSpec **out);

/*
 Replace the forced breakpoints (fractions of the integration range).

 # Safety
 `spec` must be a live handle; `nodes` must be valid for `len` reads.
 */
enum QmStatus qm_quadrature_spec_set_forced_nodes(struct QmQuadratureSpec *spec,
                                                  const double *nodes,
                                                  size_t len);

/*
 # Safety
 `spec` must be null or a handle not yet freed.
 */
void qm_quadrature_spec_free(struct QmQuadratureSpec *spec);

/*
 Create Monte Carlo settings; free with [`qm_mc_spec_free`].

 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_mc_spec_new(uint64_t samples, uint64_t seed, struct QmMcSpec **out);

/*
 # Safety
 `spec` must be null or a handle not yet freed.
 */
void qm_mc_spec_free(struct QmMcSpec *spec);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_constants(struct QmConstants *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_qpea_prob(uint64_t m, double phi, uint64_t n, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_qpea_ddim_prob(uint64_t m, double phi, uint64_t d, uint32_t t, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_hamming_weight_prob(uint64_t kappa, double phi, uint64_t n, double *out);

/*
 Parity probability of N00N group `j`; `odd` selects the odd outcome.

 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_sep_detection_group_prob(bool odd, double phi, uint32_t j, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_sep_optimal_density(double theta, uint64_t n, bool gaussian, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_two_level_density(double theta, uint64_t d, double *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_qpea_reduced(uint64_t n,
                                 const struct QmQuadratureSpec *q,
                                 struct QmMiResult *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_qpea_naive(uint64_t n,
                               const struct QmQuadratureSpec *q,
                               struct QmMiResult *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_qpea_ddim(uint64_t d,
                              uint32_t t,
                              const struct QmQuadratureSpec *q,
                              struct QmMiResult *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_sep_optimal(uint64_t n,
                                bool gaussian,
                                const struct QmQuadratureSpec *q,
                                struct QmMiResult *out);

/*
 # Safety
 `mc` must be a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_sep_optimal_mc(uint64_t n, const struct QmMcSpec *mc, struct QmMiResult *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_mi_hamming_closed(uint64_t n, struct QmMiResult *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_hamming_quadrature(uint64_t n,
                                       const struct QmQuadratureSpec *q,
                                       struct QmMiResult *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_mi_sep_detection(uint32_t t, struct QmMiResult *out);

/*
 # Safety
 `q` must be null or a live handle; `out` must be valid for writes.
 */
enum QmStatus qm_mi_two_level(uint64_t d, const struct QmQuadratureSpec *q, struct QmMiResult *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_heisenberg_bound(uint64_t n, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_sql_bound(uint64_t n, double *out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QmStatus qm_holevo_separable_entropy(uint64_t n, double *out);

/*
 Simulated QPEA outcome distribution for `t` qubits, written to
 `buf[0..2^t]`. `len` must be at least `2^t`.

 # Safety
 `buf` must be valid for `len` writes.
 */
enum QmStatus qm_qpea_statevector(uint32_t t, double phi, double *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMETRO_H */
