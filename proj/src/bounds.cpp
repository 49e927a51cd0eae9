#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "solver.hpp"

namespace qmetro {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void validate_weight(const Weight& w) {
    if (!(w.w11 > 0.0) || !(w.det() > 0.0)) {
        std::ostringstream os;
        os << "weight matrix [[" << w.w11 << ", " << w.w12 << "], [" << w.w12 << ", " << w.w22
           << "]] is not positive definite";
        fail(errc::validation, os.str());
    }
}

cx trace_prod(const cmat& a, const cmat& b) {  // Tr[AB]
    cx t = 0.0;
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j) t += a(i, j) * b(j, i);
    return t;
}

}  // namespace

Weight make_weight(double w11, double w12, double w22) {
    const Weight w{w11, w12, w22};
    validate_weight(w);
    return w;
}

Weight scalar_weight(double w) {
    if (!(w > 0.0) || !(w < 2.0)) {
        std::ostringstream os;
        os << "scalar weight w = " << w << " outside (0, 2)";
        fail(errc::validation, os.str());
    }
    return Weight{w, 0.0, 2.0 - w};
}

double sld_crb(const r2x2& qfi, const Weight& w) {
    validate_weight(w);
    if (qfi_singular(qfi)) return kInf;
    const r2x2 fi = inv2(qfi);
    return w.w11 * fi.m[0][0] + 2.0 * w.w12 * fi.m[0][1] + w.w22 * fi.m[1][1];
}

double ncrb_qubit(const r2x2& qfi, const Weight& w) {
    validate_weight(w);
    if (qfi_singular(qfi)) return kInf;
    const r2x2 fi = inv2(qfi);
    const double trwf = w.w11 * fi.m[0][0] + 2.0 * w.w12 * fi.m[0][1] + w.w22 * fi.m[1][1];
    return trwf + 2.0 * std::sqrt(w.det() / qfi.det());
}

double hcrb_qubit(const Problem& p, const Weight& w) {
    validate_weight(w);
    if (p.dim() != 2) fail(errc::dimension, "hcrb_qubit: requires a qubit problem");
    const r2x2 f = sld_qfi(p);
    if (qfi_singular(f)) return kInf;
    const c2x2 fr = rld_qfi(p);
    const double det_fr = (fr.m[0][0] * fr.m[1][1] - fr.m[0][1] * fr.m[1][0]).real();
    const double tr_fr = (fr.m[0][0] + fr.m[1][1]).real();
    if (det_fr <= 1e-14 * tr_fr * tr_fr) return kInf;
    const c2x2 z = inv2c(fr);
    return w.w11 * z.m[0][0].real() + w.w22 * z.m[1][1].real() + 2.0 * w.w12 * z.m[0][1].real() +
           2.0 * std::sqrt(w.det()) * std::abs(z.m[0][1].imag());
}

namespace {

// Objective over the free chart coordinates u = (u1, u2): the weighted
// quadratic Tr[W Z] plus either the smoothed TrAbs commutator penalty
// (Nagaoka) or the smoothed |Im Z_12| penalty (Holevo).
struct Variational {
    const Problem* prob = nullptr;
    Weight w;
    double sqrt_detw = 0.0;
    bool holevo = false;
    cmat sqrtrho;
    UnbiasedChart chart;
    double mu = 1e-2;

    void materialize(const std::vector<double>& u, cmat& x1, cmat& x2) const {
        const int n = chart.n, nf = chart.nfree;
        std::vector<double> amb1(chart.part1), amb2(chart.part2);
        for (int i = 0; i < n; ++i) {
            const double* row = &chart.basis[static_cast<size_t>(i) * nf];
            double s1 = 0.0, s2 = 0.0;
            for (int j = 0; j < nf; ++j) {
                s1 += row[j] * u[j];
                s2 += row[j] * u[nf + j];
            }
            amb1[i] += s1;
            amb2[i] += s2;
        }
        x1 = unpack_hermitian(chart.d, amb1);
        x2 = unpack_hermitian(chart.d, amb2);
    }

    double smoothed(const std::vector<double>& u, std::vector<double>& grad) const {
        cmat x1, x2;
        materialize(u, x1, x2);
        const cmat rx1 = prob->rho * x1;
        const cmat rx2 = prob->rho * x2;
        const double z11 = trace_prod(rx1, x1).real();
        const double z22 = trace_prod(rx2, x2).real();
        const cx z12 = trace_prod(rx1, x2);
        double val = w.w11 * z11 + w.w22 * z22 + 2.0 * w.w12 * z12.real();

        const cmat sym1 = rx1 + dagger(rx1);  // rho X1 + X1 rho
        const cmat sym2 = rx2 + dagger(rx2);
        cmat g1 = cx(w.w11, 0.0) * sym1 + cx(w.w12, 0.0) * sym2;
        cmat g2 = cx(w.w22, 0.0) * sym2 + cx(w.w12, 0.0) * sym1;

        if (holevo) {
            const double t = z12.imag();
            const double sm = std::sqrt(t * t + mu * mu);
            val += 2.0 * sqrt_detw * sm;
            const double coef = 2.0 * sqrt_detw * (sm > 0.0 ? t / sm : 0.0);
            // d(Im Z12)/dX1 = (X2 rho - rho X2)/(2i); X2 rho = (rho X2)^dagger
            g1 = g1 + cx(0.0, -0.5 * coef) * (dagger(rx2) - rx2);
            g2 = g2 + cx(0.0, -0.5 * coef) * (rx1 - dagger(rx1));
        } else {
            const cmat k = x1 * x2 - x2 * x1;
            const cmat h = hermitize(cx(0.0, 1.0) * (sqrtrho * k * sqrtrho));
            const EigenSystem es = eig_hermitian(h);
            const int d = chart.d;
            double pen = 0.0;
            cmat pm = cmat::zero(d);  // U f'(Lambda) U^dagger
            for (int e = 0; e < d; ++e) {
                const double lam = es.values[e];
                const double sm = std::sqrt(lam * lam + mu * mu);
                pen += sm;
                const double fp = (sm > 0.0 ? lam / sm : 0.0);
                if (fp == 0.0) continue;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) pm(i, j) += fp * es.vectors(i, e) * std::conj(es.vectors(j, e));
            }
            val += sqrt_detw * pen;
            const cmat q = sqrtrho * pm * sqrtrho;
            g1 = g1 + cx(0.0, sqrt_detw) * (x2 * q - q * x2);
            g2 = g2 + cx(0.0, sqrt_detw) * (q * x1 - x1 * q);
        }

        const std::vector<double> pg1 = pack_hermitian(hermitize(g1));
        const std::vector<double> pg2 = pack_hermitian(hermitize(g2));
        const int n = chart.n, nf = chart.nfree;
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double* row = &chart.basis[static_cast<size_t>(i) * nf];
            for (int j = 0; j < nf; ++j) {
                grad[j] += row[j] * pg1[i];
                grad[nf + j] += row[j] * pg2[i];
            }
        }
        return val;
    }

    double exact(const cmat& x1, const cmat& x2) const {
        const cmat rx1 = prob->rho * x1;
        const cmat rx2 = prob->rho * x2;
        const double z11 = trace_prod(rx1, x1).real();
        const double z22 = trace_prod(rx2, x2).real();
        const cx z12 = trace_prod(rx1, x2);
        double val = w.w11 * z11 + w.w22 * z22 + 2.0 * w.w12 * z12.real();
        if (holevo)
            val += 2.0 * sqrt_detw * std::abs(z12.imag());
        else
            val += sqrt_detw * trabs_rho_commutator(prob->rho, x1, x2);
        return val;
    }
};

BoundResult solve_variational(const Problem& p, const Weight& w, const SolverOptions& opt, bool holevo,
                              const char* name) {
    validate_weight(w);
    if (opt.max_iterations < 1 || !(opt.mu_final > 0.0) || !(opt.mu_initial >= opt.mu_final) ||
        !(opt.mu_shrink > 0.0 && opt.mu_shrink < 1.0) || !(opt.rel_tol > 0.0) || opt.tol_streak < 1 ||
        opt.memory < 1)
        fail(errc::bad_argument, std::string(name) + ": invalid solver options");

    const auto slds = sld_operators(p);
    const r2x2 f = sld_qfi(p);
    BoundResult out;
    if (qfi_singular(f)) {
        out.value = kInf;
        out.infinite = true;
        out.converged = true;
        return out;
    }

    Variational obj;
    obj.prob = &p;
    obj.w = w;
    obj.sqrt_detw = std::sqrt(w.det());
    obj.holevo = holevo;
    obj.sqrtrho = psd_sqrt(p.rho);
    obj.chart = unbiased_chart(p);

    // start from the SLD-optimal pair X_j = sum_k [F^-1]_kj L_k
    const r2x2 fi = inv2(f);
    const cmat x01 = cx(fi.m[0][0], 0.0) * slds.first + cx(fi.m[1][0], 0.0) * slds.second;
    const cmat x02 = cx(fi.m[0][1], 0.0) * slds.first + cx(fi.m[1][1], 0.0) * slds.second;
    const std::vector<double> px1 = pack_hermitian(x01);
    const std::vector<double> px2 = pack_hermitian(x02);
    const int n = obj.chart.n, nf = obj.chart.nfree;
    std::vector<double> u(2 * static_cast<size_t>(nf), 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = &obj.chart.basis[static_cast<size_t>(i) * nf];
        const double d1 = px1[i] - obj.chart.part1[i];
        const double d2 = px2[i] - obj.chart.part2[i];
        for (int j = 0; j < nf; ++j) {
            u[j] += row[j] * d1;
            u[nf + j] += row[j] * d2;
        }
    }

    LbfgsOptions lopt;
    lopt.memory = opt.memory;
    lopt.max_iters = opt.max_iterations;
    lopt.rel_tol = opt.rel_tol;
    lopt.tol_streak = opt.tol_streak;
    const ObjectiveFn fn = [&obj](const std::vector<double>& v, std::vector<double>& g) {
        return obj.smoothed(v, g);
    };

    LbfgsReport rep;
    for (double mu = opt.mu_initial;; mu *= opt.mu_shrink) {
        obj.mu = mu;
        out.final_mu = mu;
        rep = lbfgs_minimize(u, fn, lopt);
        out.iterations += rep.iterations;
        out.history_len += rep.iterations + 1;
        if (mu <= opt.mu_final * (1.0 + 1e-9)) break;
    }

    cmat x1, x2;
    obj.materialize(u, x1, x2);
    out.value = obj.exact(x1, x2);
    out.constraint_residual = unbiased_residual(p, x1, x2);
    out.converged = rep.converged;
    out.has_optimizer = true;
    out.x1 = x1;
    out.x2 = x2;
    if (!rep.converged) {
        std::ostringstream os;
        os << name << ": final smoothing stage (mu = " << out.final_mu << ") did not converge within "
           << opt.max_iterations << " iterations; value = " << out.value << ", grad_norm = " << rep.grad_norm
           << ", constraint_residual = " << out.constraint_residual;
        fail(errc::no_convergence, os.str());
    }
    return out;
}

}  // namespace

BoundResult ncrb_general(const Problem& p, const Weight& w, const SolverOptions& opt) {
    return solve_variational(p, w, opt, false, "ncrb_general");
}

BoundResult hcrb_general(const Problem& p, const Weight& w, const SolverOptions& opt) {
    return solve_variational(p, w, opt, true, "hcrb_general");
}

Curve nagaoka_curve_qubit(const r2x2& qfi, const std::vector<double>& v1_grid) {
    if (qfi_singular(qfi)) fail(errc::validation, "nagaoka_curve_qubit: singular QFI");
    const r2x2 fi = inv2(qfi);
    const double a = fi.m[0][0], b = fi.m[1][1], c = fi.m[0][1];
    const double k = a * b - c * c;  // = 1/det(qfi)
    Curve curve;
    curve.descriptor = "nagaoka";
    double prev = -kInf;
    for (double v1 : v1_grid) {
        if (!(v1 > prev)) fail(errc::bad_argument, "nagaoka_curve_qubit: v1 grid must be strictly increasing");
        prev = v1;
        if (v1 <= a) {
            std::ostringstream os;
            os << "nagaoka_curve_qubit: v1 = " << v1 << " is at or below the asymptote [F^-1]_11 = " << a;
            fail(errc::domain, os.str());
        }
        curve.pts.push_back({v1, b + k / (v1 - a)});
    }
    return curve;
}

Curve envelope_from_weighted_bound(const std::function<double(const Weight&)>& bound,
                                   const std::vector<double>& w_grid, const std::string& descriptor) {
    if (w_grid.size() < 2) fail(errc::bad_argument, "envelope: need at least two weights");
    double prev = 0.0;
    for (double w : w_grid) {
        if (!(w > 0.0) || !(w < 2.0)) fail(errc::bad_argument, "envelope: weights must lie strictly in (0, 2)");
        if (!(w > prev)) fail(errc::bad_argument, "envelope: weight grid must be strictly increasing");
        prev = w;
    }

    Curve curve;
    curve.descriptor = descriptor;
    struct Line {
        double w, c;
    };
    std::vector<Line> lines;
    for (size_t i = 0; i < w_grid.size(); ++i) {
        const double c = bound(scalar_weight(w_grid[i]));
        if (!std::isfinite(c)) {
            curve.dropped.push_back(static_cast<int>(i));
            continue;
        }
        if (!lines.empty()) {
            // merge nearly parallel consecutive lines (unit-normal distance)
            const double w1 = lines.back().w, w2 = w_grid[i];
            const double n1 = std::sqrt(w1 * w1 + (2.0 - w1) * (2.0 - w1));
            const double n2 = std::sqrt(w2 * w2 + (2.0 - w2) * (2.0 - w2));
            const double dx = w1 / n1 - w2 / n2;
            const double dy = (2.0 - w1) / n1 - (2.0 - w2) / n2;
            if (std::sqrt(dx * dx + dy * dy) <= 1e-12) continue;
        }
        lines.push_back({w_grid[i], c});
    }
    if (lines.size() < 2) return curve;  // partial data cannot form a vertex

    std::vector<std::array<double, 2>> verts;
    for (size_t i = 0; i + 1 < lines.size(); ++i) {
        const double w1 = lines[i].w, c1 = lines[i].c;
        const double w2 = lines[i + 1].w, c2 = lines[i + 1].c;
        const double diff = (c1 - c2) / (w1 - w2);  // v1 - v2
        const double v2 = (c1 - w1 * diff) / 2.0;
        verts.push_back({v2 + diff, v2});
    }
    // w increasing traces the envelope right to left; re-order and drop the
    // occasional roundoff-inverted vertex so the curve invariant holds.
    std::reverse(verts.begin(), verts.end());
    for (const auto& v : verts) {
        if (!curve.pts.empty() && (!(v[0] > curve.pts.back()[0]) || v[1] > curve.pts.back()[1])) continue;
        curve.pts.push_back(v);
    }
    return curve;
}

std::vector<double> default_envelope_weights(int n, double lambda_min, double lambda_max) {
    if (n < 2) fail(errc::bad_argument, "envelope weights: need n >= 2");
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
        fail(errc::bad_argument, "envelope weights: need 0 < lambda_min < lambda_max");
    std::vector<double> w(n);
    const double ratio = lambda_max / lambda_min;
    for (int i = 0; i < n; ++i) {
        // descending lambda gives ascending w = 2/(1 + lambda^2)
        const double lam = lambda_min * std::pow(ratio, static_cast<double>(n - 1 - i) / (n - 1));
        w[i] = 2.0 / (1.0 + lam * lam);
    }
    return w;
}

}  // namespace qmetro
