/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the Birkhoff pseudospectral trajectory-optimization core.
 *
 * Conventions:
 *   - Every fallible call returns a bh_status; BH_OK is zero.  On failure,
 *     bh_last_error() returns a message for the calling thread, valid until
 *     the thread's next API call.
 *   - Objects are opaque handles created by *_create functions and released
 *     by the matching *_destroy (safe on NULL).  A handle only borrows the
 *     handles it was created from; keep those alive.
 *   - Decision vectors are flat arrays of length 5*N_n + 5 ordered as
 *     [X | Lambda | V | Omega | U | x_a | lambda_b | x_b | nu | lambda_a].
 *   - Matrices are written row-major.
 */
#ifndef BIRKHOFF_H
#define BIRKHOFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BIRKHOFF_API __declspec(dllexport)
#else
#define BIRKHOFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bh_status {
  BH_OK = 0,
  BH_ERR_INVALID_ARGUMENT = 1,
  BH_ERR_UNKNOWN_NAME = 2,
  BH_ERR_UNSUPPORTED_GRID = 3,
  BH_ERR_CAP_EXCEEDED = 4,
  BH_ERR_SINGULAR_SYSTEM = 5,
  BH_ERR_NO_CONVERGENCE = 6,
  BH_ERR_DIMENSION_MISMATCH = 7,
  BH_ERR_IO = 8,
  BH_ERR_INTERNAL = 9
} bh_status;

typedef enum bh_grid_family {
  BH_GRID_CHEBYSHEV_LOBATTO = 0,
  BH_GRID_LEGENDRE_LOBATTO = 1
} bh_grid_family;

typedef enum bh_matrix_kind { BH_MATRIX_BA = 0, BH_MATRIX_BB = 1 } bh_matrix_kind;

typedef enum bh_linear_path {
  BH_LINEAR_DENSE_LU = 0,
  BH_LINEAR_STRUCTURED_KRYLOV = 1
} bh_linear_path;

typedef struct bh_grid bh_grid;
typedef struct bh_operators bh_operators;
typedef struct bh_problem bh_problem;
typedef struct bh_kkt bh_kkt;
typedef struct bh_solve_report bh_solve_report;
typedef struct bh_spectrum_report bh_spectrum_report;

BIRKHOFF_API const char* bh_version(void);
BIRKHOFF_API const char* bh_status_name(bh_status status);
BIRKHOFF_API const char* bh_last_error(void);

/* ---- grid ------------------------------------------------------------ */

BIRKHOFF_API bh_status bh_grid_create(bh_grid_family family, int degree,
                                      bh_grid** out);
BIRKHOFF_API void bh_grid_destroy(bh_grid* grid);
/* number of nodes N_n = degree + 1; returns 0 on NULL */
BIRKHOFF_API int bh_grid_num_nodes(const bh_grid* grid);
BIRKHOFF_API bh_status bh_grid_nodes(const bh_grid* grid, double* out,
                                     int len);
BIRKHOFF_API bh_status bh_grid_weights(const bh_grid* grid, double* out,
                                       int len);
/* absolute quadrature errors for monomials t^0 .. t^d_max (len = d_max+1) */
BIRKHOFF_API bh_status bh_grid_exactness(const bh_grid* grid, int d_max,
                                         double* out, int len);

/* ---- Birkhoff operators ---------------------------------------------- */

BIRKHOFF_API bh_status bh_operators_create(const bh_grid* grid,
                                           bh_operators** out);
BIRKHOFF_API void bh_operators_destroy(bh_operators* ops);
BIRKHOFF_API int bh_operators_num_nodes(const bh_operators* ops);
/* dense N_n x N_n matrix, row-major; len = N_n * N_n */
BIRKHOFF_API bh_status bh_operators_matrix(const bh_operators* ops,
                                           bh_matrix_kind kind, double* out,
                                           size_t len);
/* y = Ba v (or Bb v); fast != 0 selects the Chebyshev transform path */
BIRKHOFF_API bh_status bh_operators_apply(const bh_operators* ops,
                                          bh_matrix_kind kind, int fast,
                                          const double* v, double* out,
                                          int len);
BIRKHOFF_API bh_status bh_operators_lemma1_residual(const bh_operators* ops,
                                                    double* out);

/* ---- problems --------------------------------------------------------- */

/* name is one of "tp1", "tp2", "tp3" */
BIRKHOFF_API bh_status bh_problem_builtin(const char* name, bh_problem** out);

/* user-supplied scalar problem; every pointer must be non-NULL */
typedef double (*bh_fn2)(double a, double b, void* user);
typedef struct bh_problem_functions {
  bh_fn2 f, f_x, f_u, f_xx, f_xu, f_uu;      /* dynamics, args (x, u) */
  bh_fn2 E, E_a, E_b, E_aa, E_ab, E_bb;      /* Mayer cost, args (x_a, x_b) */
  bh_fn2 e, e_a, e_b, e_aa, e_ab, e_bb;      /* endpoint constraint */
} bh_problem_functions;

BIRKHOFF_API bh_status bh_problem_create(const char* name,
                                         const bh_problem_functions* fns,
                                         void* user, bh_problem** out);
BIRKHOFF_API void bh_problem_destroy(bh_problem* problem);
BIRKHOFF_API int bh_problem_has_analytic_solution(const bh_problem* problem);

/* H, H_x, H_u, H_lambda, H_xx, H_xu, H_uu, H_lambda_x, H_lambda_u */
BIRKHOFF_API bh_status bh_problem_hamiltonian(const bh_problem* problem,
                                              double lambda, double x,
                                              double u, double out[9]);
/* Ebar, E_a, E_b, E_nu, E_aa, E_ab, E_bb, E_anu, E_bnu */
BIRKHOFF_API bh_status bh_problem_endpoint(const bh_problem* problem,
                                           double nu, double x_a, double x_b,
                                           double out[9]);
/* max relative central-difference error over all authored derivatives on
 * [lo, hi]^2 with points^2 samples */
BIRKHOFF_API bh_status bh_problem_check_derivatives(const bh_problem* problem,
                                                    double lo, double hi,
                                                    int points, double* out);

/* ---- KKT system ------------------------------------------------------- */

/* flat decision-vector length 5*N_n + 5 for a grid */
BIRKHOFF_API int bh_kkt_dim_for(const bh_operators* ops);
/* documented deterministic initial guess */
BIRKHOFF_API bh_status bh_initial_guess(const bh_operators* ops, double* chi,
                                        int len);
BIRKHOFF_API bh_status bh_residual(const bh_problem* problem,
                                   const bh_operators* ops, const double* chi,
                                   int len, double* out);
BIRKHOFF_API bh_status bh_kkt_assemble(const bh_problem* problem,
                                       const bh_operators* ops,
                                       const double* chi, int len,
                                       bh_kkt** out);
BIRKHOFF_API void bh_kkt_destroy(bh_kkt* kkt);
BIRKHOFF_API int bh_kkt_dim(const bh_kkt* kkt);
BIRKHOFF_API bh_status bh_kkt_matvec(const bh_kkt* kkt, const double* v,
                                     double* out, int len, int fast);
/* row-major n x n dense materialization; len = n * n */
BIRKHOFF_API bh_status bh_kkt_dense(const bh_kkt* kkt, double* out,
                                    size_t len);
/* Matrix Market coordinate export (real general, 1-based, atomic write) */
BIRKHOFF_API bh_status bh_kkt_write_matrix_market(const bh_kkt* kkt,
                                                  const char* path,
                                                  int pattern_only);
/* alternative symmetric Hessian, order (5*N_n+4), row-major */
BIRKHOFF_API bh_status bh_kkt_alt_dense(const bh_problem* problem,
                                        const bh_operators* ops,
                                        const double* chi, int len,
                                        double* out, size_t out_len);
/* hamiltonian_values, total_pattern, bytes */
BIRKHOFF_API bh_status bh_kkt_nnz_report(const bh_kkt* kkt, int n_x, int n_u,
                                         int64_t out[3]);
/* one linear solve A xi = rhs: dense LU or restarted GMRES on the
 * structured matvec (krylov_tol/krylov_restart ignored for LU) */
BIRKHOFF_API bh_status bh_kkt_linear_solve(const bh_kkt* kkt,
                                           const double* rhs, double* out,
                                           int len, bh_linear_path path,
                                           double krylov_tol,
                                           int krylov_restart, int fast);

/* ---- Newton solver ----------------------------------------------------- */

typedef struct bh_solve_options {
  int max_iter;            /* default 50 */
  double tol;              /* infinity norm on F, default 1e-10 */
  bh_linear_path linear_path;
  double armijo_c;         /* default 1e-4 */
  double armijo_shrink;    /* default 0.5 */
  double min_step;         /* default 1e-12 */
  double krylov_tol;       /* default 1e-12 */
  int krylov_restart;      /* default 50 */
  int use_fast_transform;  /* Chebyshev grids only, default 0 */
} bh_solve_options;

BIRKHOFF_API void bh_solve_options_init(bh_solve_options* opts);

/* chi0 may be NULL to start from the documented guess */
BIRKHOFF_API bh_status bh_solve(const bh_problem* problem,
                                const bh_operators* ops, const double* chi0,
                                int chi0_len, const bh_solve_options* opts,
                                bh_solve_report** out);
BIRKHOFF_API void bh_solve_report_destroy(bh_solve_report* report);
BIRKHOFF_API int bh_solve_report_converged(const bh_solve_report* report);
BIRKHOFF_API int bh_solve_report_iterations(const bh_solve_report* report);
BIRKHOFF_API int bh_solve_report_history_len(const bh_solve_report* report);
BIRKHOFF_API bh_status bh_solve_report_history(const bh_solve_report* report,
                                               double* out, int len);
/* full decision vector at the final iterate */
BIRKHOFF_API bh_status bh_solve_report_chi(const bh_solve_report* report,
                                           double* out, int len);
/* x_a, x_b, lambda_a, lambda_b, nu */
BIRKHOFF_API bh_status bh_solve_report_endpoints(const bh_solve_report* report,
                                                 double out[5]);
/* state_err, costate_err, control_err, x_b_err, lambda_a_err, nu_err,
 * hamiltonian_variation; entries are NaN when no closed form is registered */
BIRKHOFF_API bh_status bh_solve_report_errors(const bh_solve_report* report,
                                              const bh_problem* problem,
                                              double out[7]);

/* ---- spectral reports -------------------------------------------------- */

BIRKHOFF_API bh_status bh_spectrum_compute(const bh_kkt* kkt,
                                           bh_spectrum_report** out);
BIRKHOFF_API void bh_spectrum_report_destroy(bh_spectrum_report* report);
BIRKHOFF_API int bh_spectrum_dim(const bh_spectrum_report* report);
BIRKHOFF_API bh_status bh_spectrum_eigenvalues(const bh_spectrum_report* report,
                                               double* re, double* im,
                                               int len);
/* spectral_radius, g_bound, count_in_minus2_4, containment_row,
 * containment_col, radius_within_bound */
BIRKHOFF_API bh_status bh_spectrum_summary(const bh_spectrum_report* report,
                                           double out[6]);
BIRKHOFF_API int bh_spectrum_num_families(const bh_spectrum_report* report);
/* label is NUL-terminated, written into buf (cap includes the NUL);
 * orientation: 0 row, 1 column; size receives the disc count */
BIRKHOFF_API bh_status bh_spectrum_family_info(
    const bh_spectrum_report* report, int index, char* buf, int cap,
    int* orientation, int* size);
BIRKHOFF_API bh_status bh_spectrum_family_discs(
    const bh_spectrum_report* report, int index, double* centers,
    double* radii, int len);
/* max column abs-sums of Ba and Bb, observed (see Theorem 1 notes) */
BIRKHOFF_API bh_status bh_spectrum_column_sums(
    const bh_spectrum_report* report, double out[2]);

/* delta / w_i amplification; out has grid size, argmax_out up to grid size
 * entries, argmax_len receives the count */
BIRKHOFF_API bh_status bh_weak_form_amplification(const bh_grid* grid,
                                                  double delta, double* out,
                                                  int len, int* argmax_out,
                                                  int* argmax_len);

#ifdef __cplusplus
}
#endif

#endif /* BIRKHOFF_H */
