// extern-C surface: opaque handles around the core value types, integer
// status codes mirroring errc, and a thread-local last-error message.

#include "qmetro/qmetro.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "curve.hpp"
#include "luwang.hpp"
#include "measurement.hpp"
#include "model.hpp"
#include "randomgen.hpp"
#include "scenarios.hpp"

using namespace qmetro;

struct qm_problem {
    Problem p;
};
struct qm_povm {
    Povm m;
};
struct qm_rng {
    Rng r;
};

namespace {

thread_local std::string g_last_error;

qm_status map_code(errc c) {
    switch (c) {
        case errc::validation: return QM_E_VALIDATION;
        case errc::dimension: return QM_E_DIMENSION;
        case errc::not_psd: return QM_E_NOT_PSD;
        case errc::singular: return QM_E_SINGULAR;
        case errc::rank_deficient: return QM_E_RANK;
        case errc::unsupported_derivative: return QM_E_DERIVATIVE;
        case errc::infeasible: return QM_E_INFEASIBLE;
        case errc::no_convergence: return QM_E_NO_CONVERGENCE;
        case errc::domain: return QM_E_DOMAIN;
        case errc::generation: return QM_E_GENERATION;
        case errc::bad_argument: return QM_E_BAD_ARGUMENT;
        case errc::internal: return QM_E_INTERNAL;
    }
    return QM_E_INTERNAL;
}

template <typename Fn>
qm_status guard(Fn&& fn) {
    try {
        fn();
        return QM_OK;
    } catch (const qm_error& e) {
        g_last_error = e.what();
        return map_code(e.code);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QM_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QM_E_INTERNAL;
    }
}

qm_status arg_error(const char* msg) {
    g_last_error = msg;
    return QM_E_BAD_ARGUMENT;
}

cmat mat_in(int d, const double* buf) {
    cmat m(d);
    for (int i = 0; i < d * d; ++i) m.a[i] = cx(buf[2 * i], buf[2 * i + 1]);
    return m;
}

void mat_out(const cmat& m, double* buf) {
    const int n = m.d * m.d;
    for (int i = 0; i < n; ++i) {
        buf[2 * i] = m.a[i].real();
        buf[2 * i + 1] = m.a[i].imag();
    }
}

Weight weight_in(const qm_weight* w) {
    if (!w) return make_weight(1.0, 0.0, 1.0);
    return make_weight(w->w11, w->w12, w->w22);
}

SolverOptions options_in(const qm_solver_options* o) {
    SolverOptions s;
    if (o) {
        s.max_iterations = o->max_iterations;
        s.mu_initial = o->mu_initial;
        s.mu_final = o->mu_final;
        s.mu_shrink = o->mu_shrink;
        s.rel_tol = o->rel_tol;
        s.tol_streak = o->tol_streak;
        s.memory = o->memory;
    }
    return s;
}

void result_out(const BoundResult& r, qm_bound_result* out) {
    out->value = r.value;
    out->infinite = r.infinite ? 1 : 0;
    out->iterations = r.iterations;
    out->final_mu = r.final_mu;
    out->constraint_residual = r.constraint_residual;
    out->history_len = r.history_len;
    out->converged = r.converged ? 1 : 0;
}

}  // namespace

extern "C" {

const char* qm_last_error(void) { return g_last_error.c_str(); }

qm_status qm_problem_create(int dim, const double* rho, const double* drho1,
                            const double* drho2, qm_problem** out) {
    if (!rho || !drho1 || !drho2 || !out) return arg_error("null pointer");
    if (dim < 2) return arg_error("dimension must be at least 2");
    return guard([&] {
        Problem p = make_problem(mat_in(dim, rho), mat_in(dim, drho1),
                                 mat_in(dim, drho2));
        *out = new qm_problem{std::move(p)};
    });
}

void qm_problem_free(qm_problem* p) { delete p; }

int qm_problem_dim(const qm_problem* p) { return p ? p->p.dim() : 0; }

qm_status qm_problem_rotations(double r, double theta, double phi,
                               qm_problem** out) {
    if (!out) return arg_error("null pointer");
    return guard([&] {
        *out = new qm_problem{rotations_problem({r, theta, phi})};
    });
}

qm_status qm_problem_equal_bounds(int dim, double* expected, qm_problem** out) {
    if (!out) return arg_error("null pointer");
    return guard([&] {
        auto [p, e] = equal_bounds_problem(dim);
        if (expected) *expected = e;
        *out = new qm_problem{std::move(p)};
    });
}

qm_status qm_problem_matrices(const qm_problem* p, double* rho, double* drho1,
                              double* drho2) {
    if (!p) return arg_error("null problem");
    if (rho) mat_out(p->p.rho, rho);
    if (drho1) mat_out(p->p.drho1, drho1);
    if (drho2) mat_out(p->p.drho2, drho2);
    return QM_OK;
}

qm_status qm_sld_qfi(const qm_problem* p, double* qfi) {
    if (!p || !qfi) return arg_error("null pointer");
    return guard([&] {
        r2x2 f = sld_qfi(p->p);
        qfi[0] = f.m[0][0];
        qfi[1] = f.m[0][1];
        qfi[2] = f.m[1][0];
        qfi[3] = f.m[1][1];
    });
}

qm_status qm_rld_qfi(const qm_problem* p, double* rld) {
    if (!p || !rld) return arg_error("null pointer");
    return guard([&] {
        c2x2 f = rld_qfi(p->p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                rld[2 * (2 * i + j)] = f.m[i][j].real();
                rld[2 * (2 * i + j) + 1] = f.m[i][j].imag();
            }
    });
}

qm_status qm_incompatibility(const qm_problem* p, double* c_tilde) {
    if (!p || !c_tilde) return arg_error("null pointer");
    return guard([&] { *c_tilde = incompatibility(p->p); });
}

qm_weight qm_weight_scalar(double w) {
    qm_weight out;
    out.w11 = w;
    out.w12 = 0.0;
    out.w22 = 2.0 - w;
    return out;
}

void qm_solver_options_default(qm_solver_options* opt) {
    if (!opt) return;
    SolverOptions s;
    opt->max_iterations = s.max_iterations;
    opt->mu_initial = s.mu_initial;
    opt->mu_final = s.mu_final;
    opt->mu_shrink = s.mu_shrink;
    opt->rel_tol = s.rel_tol;
    opt->tol_streak = s.tol_streak;
    opt->memory = s.memory;
}

qm_status qm_sld_crb(const qm_problem* p, const qm_weight* w, double* value) {
    if (!p || !value) return arg_error("null pointer");
    return guard([&] { *value = sld_crb(sld_qfi(p->p), weight_in(w)); });
}

qm_status qm_ncrb_qubit(const qm_problem* p, const qm_weight* w, double* value) {
    if (!p || !value) return arg_error("null pointer");
    return guard([&] {
        if (p->p.dim() != 2) fail(errc::dimension, "closed form needs d = 2");
        *value = ncrb_qubit(sld_qfi(p->p), weight_in(w));
    });
}

qm_status qm_hcrb_qubit(const qm_problem* p, const qm_weight* w, double* value) {
    if (!p || !value) return arg_error("null pointer");
    return guard([&] { *value = hcrb_qubit(p->p, weight_in(w)); });
}

qm_status qm_ncrb_general(const qm_problem* p, const qm_weight* w,
                          const qm_solver_options* opt, qm_bound_result* out) {
    if (!p || !out) return arg_error("null pointer");
    return guard([&] { result_out(ncrb_general(p->p, weight_in(w), options_in(opt)), out); });
}

qm_status qm_hcrb_general(const qm_problem* p, const qm_weight* w,
                          const qm_solver_options* opt, qm_bound_result* out) {
    if (!p || !out) return arg_error("null pointer");
    return guard([&] { result_out(hcrb_general(p->p, weight_in(w), options_in(opt)), out); });
}

qm_status qm_lwb(double f11, double f22, double c_tilde, qm_lwb_result* out) {
    if (!out) return arg_error("null pointer");
    return guard([&] {
        LwbResult r = lwb(make_lwur_spec(f11, f22, c_tilde));
        out->value = r.value;
        out->v1 = r.v1;
        out->v2 = r.v2;
        out->boundary_active = r.boundary_active ? 1 : 0;
        out->g1_active = r.g1_active ? 1 : 0;
        out->g2_active = r.g2_active ? 1 : 0;
        out->dual_eta = r.dual_eta;
        out->kkt_residual = r.kkt_residual;
        out->feas_residual = r.feas_residual;
        out->path = static_cast<int>(r.path);
    });
}

qm_status qm_lwur_slack(double f11, double f22, double c_tilde, double v1,
                        double v2, double* slack) {
    if (!slack) return arg_error("null pointer");
    return guard([&] {
        *slack = lwur_slack(v1, v2, make_lwur_spec(f11, f22, c_tilde));
    });
}

qm_status qm_lwur_curve(double f11, double f22, double c_tilde,
                        const double* v1_grid, int n, double* v1, double* v2,
                        int* dropped) {
    if (!v1_grid || !v1 || !v2) return arg_error("null pointer");
    if (n < 1) return arg_error("grid must be nonempty");
    return guard([&] {
        Curve c = lwur_boundary_curve(make_lwur_spec(f11, f22, c_tilde),
                                      std::vector<double>(v1_grid, v1_grid + n));
        std::vector<bool> is_dropped(n, false);
        for (int idx : c.dropped) is_dropped[idx] = true;
        size_t k = 0;
        for (int i = 0; i < n; ++i) {
            if (is_dropped[i]) {
                v1[i] = v2[i] = std::nan("");
            } else {
                v1[i] = c.pts[k][0];
                v2[i] = c.pts[k][1];
                ++k;
            }
            if (dropped) dropped[i] = is_dropped[i] ? 1 : 0;
        }
    });
}

qm_status qm_nagaoka_curve(const qm_problem* p, const double* v1_grid, int n,
                           double* v2) {
    if (!p || !v1_grid || !v2) return arg_error("null pointer");
    if (n < 1) return arg_error("grid must be nonempty");
    return guard([&] {
        if (p->p.dim() != 2) fail(errc::dimension, "Nagaoka curve needs d = 2");
        Curve c = nagaoka_curve_qubit(sld_qfi(p->p),
                                      std::vector<double>(v1_grid, v1_grid + n));
        for (int i = 0; i < n; ++i) v2[i] = c.pts[i][1];
    });
}

qm_status qm_bound_envelope(const qm_problem* p, int kind, const double* w_grid,
                            int n, double* v1, double* v2, int* npts) {
    if (!p || !w_grid || !v1 || !v2 || !npts) return arg_error("null pointer");
    if (kind != 0 && kind != 1) return arg_error("kind must be 0 (sld) or 1 (ncrb)");
    return guard([&] {
        const Problem& prob = p->p;
        r2x2 f = sld_qfi(prob);
        auto bound = [&](const Weight& w) -> double {
            if (kind == 0) return sld_crb(f, w);
            if (prob.dim() == 2) return ncrb_qubit(f, w);
            return ncrb_general(prob, w).value;
        };
        Curve c = envelope_from_weighted_bound(
            bound, std::vector<double>(w_grid, w_grid + n),
            kind == 0 ? "sld" : "ncrb");
        for (size_t i = 0; i < c.pts.size(); ++i) {
            v1[i] = c.pts[i][0];
            v2[i] = c.pts[i][1];
        }
        *npts = static_cast<int>(c.pts.size());
    });
}

qm_status qm_default_envelope_weights(int n, double lambda_min,
                                      double lambda_max, double* w_grid) {
    if (!w_grid) return arg_error("null pointer");
    return guard([&] {
        std::vector<double> g = default_envelope_weights(n, lambda_min, lambda_max);
        std::memcpy(w_grid, g.data(), g.size() * sizeof(double));
    });
}

qm_status qm_povm_create(int dim, int outcomes, const double* effects,
                         qm_povm** out) {
    if (!effects || !out) return arg_error("null pointer");
    if (dim < 1 || outcomes < 1) return arg_error("bad dimensions");
    return guard([&] {
        std::vector<cmat> eff;
        eff.reserve(outcomes);
        for (int k = 0; k < outcomes; ++k)
            eff.push_back(mat_in(dim, effects + 2 * static_cast<size_t>(dim) * dim * k));
        *out = new qm_povm{make_povm(std::move(eff))};
    });
}

void qm_povm_free(qm_povm* m) { delete m; }

int qm_povm_dim(const qm_povm* m) { return m ? m->m.dim() : 0; }

int qm_povm_outcomes(const qm_povm* m) { return m ? m->m.outcomes() : 0; }

qm_status qm_probabilities(const qm_problem* p, const qm_povm* m, double* prob,
                           double* dp1, double* dp2) {
    if (!p || !m) return arg_error("null pointer");
    return guard([&] {
        OutcomeStats st = probabilities(p->p, m->m);
        for (int k = 0; k < m->m.outcomes(); ++k) {
            if (prob) prob[k] = st.p[k];
            if (dp1) dp1[k] = st.dp1[k];
            if (dp2) dp2[k] = st.dp2[k];
        }
    });
}

qm_status qm_classical_fisher(const qm_problem* p, const qm_povm* m,
                              double* fisher) {
    if (!p || !m || !fisher) return arg_error("null pointer");
    return guard([&] {
        r2x2 f = classical_fisher(p->p, m->m);
        fisher[0] = f.m[0][0];
        fisher[1] = f.m[0][1];
        fisher[2] = f.m[1][0];
        fisher[3] = f.m[1][1];
    });
}

qm_status qm_regret_report(const qm_problem* p, const qm_povm* m,
                           qm_regret_stats* out) {
    if (!p || !m || !out) return arg_error("null pointer");
    return guard([&] {
        RegretReport r = regret_report(p->p, m->m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                out->classical_fisher[2 * i + j] = r.classical_fisher.m[i][j];
                out->regret[2 * i + j] = r.regret.m[i][j];
            }
        out->delta1 = r.delta1;
        out->delta2 = r.delta2;
        out->gap = r.gap;
        out->precision = r.precision;
    });
}

qm_status qm_rng_create(uint64_t seed, uint64_t stream, qm_rng** out) {
    if (!out) return arg_error("null pointer");
    *out = new qm_rng{Rng(seed, stream)};
    return QM_OK;
}

void qm_rng_free(qm_rng* r) { delete r; }

qm_status qm_rng_uniform(qm_rng* r, double* value) {
    if (!r || !value) return arg_error("null pointer");
    *value = r->r.uniform01();
    return QM_OK;
}

qm_status qm_rng_gaussian(qm_rng* r, double* value) {
    if (!r || !value) return arg_error("null pointer");
    *value = r->r.gaussian();
    return QM_OK;
}

qm_status qm_random_problem(int dim, qm_rng* r, qm_problem** out) {
    if (!r || !out) return arg_error("null pointer");
    return guard([&] { *out = new qm_problem{random_problem(dim, r->r)}; });
}

qm_status qm_random_pure_problem(int dim, qm_rng* r, qm_problem** out) {
    if (!r || !out) return arg_error("null pointer");
    return guard([&] { *out = new qm_problem{random_pure_problem(dim, r->r)}; });
}

qm_status qm_random_rank1_povm(int dim, int outcomes, qm_rng* r, qm_povm** out) {
    if (!r || !out) return arg_error("null pointer");
    return guard([&] { *out = new qm_povm{random_rank1_povm(dim, outcomes, r->r)}; });
}

qm_status qm_random_fullrank_povm(int dim, int outcomes, qm_rng* r,
                                  qm_povm** out) {
    if (!r || !out) return arg_error("null pointer");
    return guard([&] { *out = new qm_povm{random_fullrank_povm(dim, outcomes, r->r)}; });
}

}  // extern "C"
