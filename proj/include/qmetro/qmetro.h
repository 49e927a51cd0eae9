/* C interface to the qmetro library: precision limits for quantum
 * two-parameter estimation (SLD / Nagaoka / Holevo Cramer-Rao bounds, the
 * Lu-Wang bound and uncertainty relation, POVM regret statistics, and
 * seeded random problem/measurement ensembles).
 *
 * Conventions:
 *  - Complex d x d matrices pass as interleaved doubles: re(0,0), im(0,0),
 *    re(0,1), ... row-major, buffer length 2*d*d.
 *  - Every function returns a qm_status; QM_OK is 0. On failure, outputs
 *    are untouched and qm_last_error() returns a message for the calling
 *    thread.
 *  - Infinite bounds are reported as +HUGE_VAL with the *_infinite flag set
 *    where one exists.
 *  - Handles are created and freed by this library only.
 */

#ifndef QMETRO_H
#define QMETRO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
    QM_OK = 0,
    QM_E_VALIDATION = 1,   /* malformed input (non-Hermitian, not a state...) */
    QM_E_DIMENSION = 2,    /* mismatched or unsupported dimensions */
    QM_E_NOT_PSD = 3,      /* operator fails a positivity gate */
    QM_E_SINGULAR = 4,     /* singular matrix where inverse needed */
    QM_E_RANK = 5,         /* rank-deficient state where full rank needed */
    QM_E_DERIVATIVE = 6,   /* derivative unsupported on the state's kernel */
    QM_E_INFEASIBLE = 7,   /* locally-unbiased constraints infeasible */
    QM_E_NO_CONVERGENCE = 8,  /* solver exhausted its iteration budget */
    QM_E_DOMAIN = 9,       /* input outside a bound's domain */
    QM_E_GENERATION = 10,  /* random generation failed after retries */
    QM_E_BAD_ARGUMENT = 11,
    QM_E_INTERNAL = 12
} qm_status;

/* Thread-local message for the most recent failure in this thread. */
const char* qm_last_error(void);

/* ---- problems ---- */

typedef struct qm_problem qm_problem;

/* rho, drho1, drho2: interleaved complex, row-major, 2*d*d doubles each. */
qm_status qm_problem_create(int dim, const double* rho, const double* drho1,
                            const double* drho2, qm_problem** out);
void qm_problem_free(qm_problem* p);
int qm_problem_dim(const qm_problem* p);

/* Qubit rotation-sensing scenario: state (I + r n.sigma)/2. */
qm_status qm_problem_rotations(double r, double theta, double phi,
                               qm_problem** out);

/* Corner-coupled diagonal family; both bounds equal 12(2d-1). */
qm_status qm_problem_equal_bounds(int dim, double* expected, qm_problem** out);

/* Copies the matrices back out (buffers of 2*d*d doubles, may be NULL). */
qm_status qm_problem_matrices(const qm_problem* p, double* rho, double* drho1,
                              double* drho2);

/* ---- model quantities ---- */

/* qfi: row-major 2x2 (4 doubles). */
qm_status qm_sld_qfi(const qm_problem* p, double* qfi);
/* rld: interleaved complex 2x2 (8 doubles). */
qm_status qm_rld_qfi(const qm_problem* p, double* rld);
qm_status qm_incompatibility(const qm_problem* p, double* c_tilde);

/* ---- weights ---- */

typedef struct qm_weight {
    double w11, w12, w22; /* symmetric positive definite */
} qm_weight;

/* W = diag(w, 2-w), 0 < w < 2. */
qm_weight qm_weight_scalar(double w);

/* ---- scalar bounds ---- */

typedef struct qm_bound_result {
    double value;
    int infinite;            /* QFI singular: value is +inf */
    int iterations;          /* total across smoothing stages */
    double final_mu;         /* last smoothing parameter */
    double constraint_residual;
    int history_len;         /* objective evaluations recorded */
    int converged;
} qm_bound_result;

typedef struct qm_solver_options {
    int max_iterations;  /* per smoothing stage */
    double mu_initial, mu_final, mu_shrink;
    double rel_tol;
    int tol_streak;
    int memory;
} qm_solver_options;

void qm_solver_options_default(qm_solver_options* opt);

qm_status qm_sld_crb(const qm_problem* p, const qm_weight* w, double* value);
/* Closed qubit form: Tr[W F^-1] + 2 sqrt(det W / det F). d=2 only. */
qm_status qm_ncrb_qubit(const qm_problem* p, const qm_weight* w, double* value);
/* RLD-form expression Tr[W Re Fr^-1] + 2 sqrt(det W)|Im(Fr^-1)_12|; d=2,
 * full-rank rho. A lower bound on the Holevo CRB; exact for families like
 * the rotation-sensing scenario. */
qm_status qm_hcrb_qubit(const qm_problem* p, const qm_weight* w, double* value);
/* Variational solvers (any d >= 2); opt may be NULL for defaults. */
qm_status qm_ncrb_general(const qm_problem* p, const qm_weight* w,
                          const qm_solver_options* opt, qm_bound_result* out);
qm_status qm_hcrb_general(const qm_problem* p, const qm_weight* w,
                          const qm_solver_options* opt, qm_bound_result* out);

/* ---- Lu-Wang bound and uncertainty relation ---- */

typedef struct qm_lwb_result {
    double value;
    double v1, v2;          /* optimizer */
    int boundary_active, g1_active, g2_active;
    double dual_eta;
    double kkt_residual, feas_residual;
    int path;               /* 0 closed c=1, 1 closed c=0, 2 numeric */
} qm_lwb_result;

qm_status qm_lwb(double f11, double f22, double c_tilde, qm_lwb_result* out);
/* gamma_1 + gamma_2 - 2 sqrt((1-c^2)(1-gamma_1)(1-gamma_2)) - (2-c^2),
 * gamma_j = 1/(v_j f_jj); the (v1, v2) region is feasible where <= 0. */
qm_status qm_lwur_slack(double f11, double f22, double c_tilde, double v1,
                        double v2, double* slack);

/* ---- trade-off curves ---- */

/* Fills v1/v2 (n doubles each) for the LWUR boundary over a strictly
 * increasing v1 grid; entries with no finite curve point come back NaN and
 * dropped[i] is set to 1 (dropped may be NULL). */
qm_status qm_lwur_curve(double f11, double f22, double c_tilde,
                        const double* v1_grid, int n, double* v1,
                        double* v2, int* dropped);
/* Nagaoka hyperbola (v1 - a)(v2 - b) = ab - c^2 over a v1 grid; d=2. */
qm_status qm_nagaoka_curve(const qm_problem* p, const double* v1_grid, int n,
                           double* v2);

/* Envelope of weighted-bound lines over a weight grid w in (0,2).
 * kind: 0 = sld, 1 = ncrb (closed form for d=2, variational otherwise).
 * Vertex count is written to *npts (at most n-1); v1/v2 sized n-1. */
qm_status qm_bound_envelope(const qm_problem* p, int kind, const double* w_grid,
                            int n, double* v1, double* v2, int* npts);
/* Log-uniform default weight grid in lambda = sqrt((2-w)/w). */
qm_status qm_default_envelope_weights(int n, double lambda_min,
                                      double lambda_max, double* w_grid);

/* ---- measurements ---- */

typedef struct qm_povm qm_povm;

/* effects: m interleaved complex d x d blocks, concatenated. */
qm_status qm_povm_create(int dim, int outcomes, const double* effects,
                         qm_povm** out);
void qm_povm_free(qm_povm* m);
int qm_povm_dim(const qm_povm* m);
int qm_povm_outcomes(const qm_povm* m);

/* p, dp1, dp2: m doubles each (may be NULL). */
qm_status qm_probabilities(const qm_problem* p, const qm_povm* m, double* prob,
                           double* dp1, double* dp2);
qm_status qm_classical_fisher(const qm_problem* p, const qm_povm* m,
                              double* fisher);

typedef struct qm_regret_stats {
    double classical_fisher[4]; /* row-major 2x2 */
    double regret[4];           /* quantum minus classical */
    double delta1, delta2;
    double gap;                 /* IRTR slack G */
    double precision;           /* det F / Tr F */
} qm_regret_stats;

qm_status qm_regret_report(const qm_problem* p, const qm_povm* m,
                           qm_regret_stats* out);

/* ---- seeded random generation ---- */

typedef struct qm_rng qm_rng;

qm_status qm_rng_create(uint64_t seed, uint64_t stream, qm_rng** out);
void qm_rng_free(qm_rng* r);
qm_status qm_rng_uniform(qm_rng* r, double* value);
qm_status qm_rng_gaussian(qm_rng* r, double* value);

qm_status qm_random_problem(int dim, qm_rng* r, qm_problem** out);
qm_status qm_random_pure_problem(int dim, qm_rng* r, qm_problem** out);
qm_status qm_random_rank1_povm(int dim, int outcomes, qm_rng* r, qm_povm** out);
qm_status qm_random_fullrank_povm(int dim, int outcomes, qm_rng* r,
                                  qm_povm** out);

#ifdef __cplusplus
}
#endif

#endif /* QMETRO_H */
