#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmetro {

namespace {

const double kSqrt2 = 1.4142135623730951;

}  // namespace

std::vector<double> pack_hermitian(const cmat& g) {
    require_hermitian(g, "pack_hermitian");
    const int d = g.d;
    std::vector<double> x(static_cast<size_t>(d) * d, 0.0);
    int idx = 0;
    for (int j = 0; j < d; ++j) x[idx++] = g(j, j).real();
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            x[idx++] = kSqrt2 * g(j, k).real();
            x[idx++] = kSqrt2 * g(j, k).imag();
        }
    return x;
}

cmat unpack_hermitian(int d, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != d * d) fail(errc::dimension, "unpack_hermitian: coordinate count != d*d");
    cmat g = cmat::zero(d);
    int idx = 0;
    for (int j = 0; j < d; ++j) g(j, j) = x[idx++];
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            const double re = x[idx++] / kSqrt2;
            const double im = x[idx++] / kSqrt2;
            g(j, k) = cx(re, im);
            g(k, j) = cx(re, -im);
        }
    return g;
}

UnbiasedChart unbiased_chart(const Problem& p) {
    const int d = p.dim();
    const int n = d * d;
    if (n < 4) fail(errc::dimension, "unbiased_chart: need dimension >= 2");

    // A = C^T, with C rows = coordinates of rho, drho1, drho2. Householder
    // QR of A gives the null space of C (trailing Q columns) plus least-norm
    // particular solutions through the leading ones.
    const std::vector<double> rows[3] = {pack_hermitian(p.rho), pack_hermitian(hermitize(p.drho1)),
                                         pack_hermitian(hermitize(p.drho2))};
    std::vector<double> r(static_cast<size_t>(n) * 3);
    double cnorm2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) {
            r[static_cast<size_t>(i) * 3 + k] = rows[k][i];
            cnorm2 += rows[k][i] * rows[k][i];
        }
    const double cnorm = std::sqrt(cnorm2);

    std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) q[static_cast<size_t>(i) * n + i] = 1.0;

    std::vector<double> v(n), tmp(std::max(n, 3));
    for (int k = 0; k < 3; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < n; ++i) norm2 += r[static_cast<size_t>(i) * 3 + k] * r[static_cast<size_t>(i) * 3 + k];
        const double alpha = (r[static_cast<size_t>(k) * 3 + k] >= 0.0 ? -1.0 : 1.0) * std::sqrt(norm2);
        if (std::abs(alpha) <= 1e-300) continue;  // column already annihilated
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) {
            v[i] = r[static_cast<size_t>(i) * 3 + k];
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 <= 1e-300) continue;
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (int i = k; i < n; ++i) v[i] *= inv;
        // R <- (I - 2 v v^T) R on the trailing block
        for (int c = k; c < 3; ++c) {
            double dot = 0.0;
            for (int i = k; i < n; ++i) dot += v[i] * r[static_cast<size_t>(i) * 3 + c];
            for (int i = k; i < n; ++i) r[static_cast<size_t>(i) * 3 + c] -= 2.0 * dot * v[i];
        }
        // Q <- Q (I - 2 v v^T)
        for (int row = 0; row < n; ++row) {
            double dot = 0.0;
            for (int i = k; i < n; ++i) dot += q[static_cast<size_t>(row) * n + i] * v[i];
            for (int i = k; i < n; ++i) q[static_cast<size_t>(row) * n + i] -= 2.0 * dot * v[i];
        }
    }

    for (int k = 0; k < 3; ++k)
        if (std::abs(r[static_cast<size_t>(k) * 3 + k]) <= 1e-12 * cnorm) {
            std::ostringstream os;
            os << "unbiased_chart: rho and its derivatives are linearly dependent (pivot " << k
               << " of the constraint matrix is " << r[static_cast<size_t>(k) * 3 + k] << ")";
            fail(errc::infeasible, os.str());
        }

    UnbiasedChart chart;
    chart.d = d;
    chart.n = n;
    chart.nfree = n - 3;
    chart.basis.resize(static_cast<size_t>(n) * chart.nfree);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < chart.nfree; ++j)
            chart.basis[static_cast<size_t>(i) * chart.nfree + j] = q[static_cast<size_t>(i) * n + (3 + j)];

    // Forward-substitute R1^T z = b, then x = Q[:,0:3] z.
    auto particular = [&](double b0, double b1, double b2) {
        double z[3];
        z[0] = b0 / r[0 * 3 + 0];
        z[1] = (b1 - r[0 * 3 + 1] * z[0]) / r[1 * 3 + 1];
        z[2] = (b2 - r[0 * 3 + 2] * z[0] - r[1 * 3 + 2] * z[1]) / r[2 * 3 + 2];
        std::vector<double> x(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) x[i] += q[static_cast<size_t>(i) * n + k] * z[k];
        return x;
    };
    chart.part1 = particular(0.0, 1.0, 0.0);
    chart.part2 = particular(0.0, 0.0, 1.0);
    return chart;
}

double unbiased_residual(const Problem& p, const cmat& x1, const cmat& x2) {
    auto re_tr = [](const cmat& a, const cmat& b) {
        cx t = 0.0;
        for (int i = 0; i < a.d; ++i)
            for (int j = 0; j < a.d; ++j) t += a(i, j) * b(j, i);
        return t.real();
    };
    double worst = 0.0;
    worst = std::max(worst, std::abs(re_tr(p.rho, x1)));
    worst = std::max(worst, std::abs(re_tr(p.drho1, x1) - 1.0));
    worst = std::max(worst, std::abs(re_tr(p.drho2, x1)));
    worst = std::max(worst, std::abs(re_tr(p.rho, x2)));
    worst = std::max(worst, std::abs(re_tr(p.drho1, x2)));
    worst = std::max(worst, std::abs(re_tr(p.drho2, x2) - 1.0));
    return worst;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

LbfgsReport lbfgs_minimize(std::vector<double>& x, const ObjectiveFn& fn, const LbfgsOptions& opt) {
    const size_t n = x.size();
    std::vector<std::vector<double>> s_list, y_list;
    std::vector<double> rho_list;

    std::vector<double> g(n), gnew(n), xnew(n), dir(n), q(n);
    std::vector<double> alpha(opt.memory);

    double f = fn(x, g);
    LbfgsReport rep;
    rep.value = f;
    rep.grad_norm = norm(g);

    int streak = 0;
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        // two-loop recursion
        q = g;
        const int m = static_cast<int>(s_list.size());
        for (int i = m - 1; i >= 0; --i) {
            alpha[i] = rho_list[i] * dot(s_list[i], q);
            for (size_t j = 0; j < n; ++j) q[j] -= alpha[i] * y_list[i][j];
        }
        if (m > 0) {
            const double gamma = 1.0 / (rho_list[m - 1] * dot(y_list[m - 1], y_list[m - 1]));
            for (size_t j = 0; j < n; ++j) q[j] *= gamma;
        }
        for (int i = 0; i < m; ++i) {
            const double beta = rho_list[i] * dot(y_list[i], q);
            for (size_t j = 0; j < n; ++j) q[j] += (alpha[i] - beta) * s_list[i][j];
        }
        for (size_t j = 0; j < n; ++j) dir[j] = -q[j];

        double slope = dot(g, dir);
        if (!(slope < 0.0)) {  // not a descent direction: fall back to steepest
            s_list.clear();
            y_list.clear();
            rho_list.clear();
            for (size_t j = 0; j < n; ++j) dir[j] = -g[j];
            slope = dot(g, dir);
            if (!(slope < 0.0)) {  // zero gradient
                rep.converged = true;
                break;
            }
        }

        // Armijo backtracking
        double t = 1.0;
        double fnew = 0.0;
        bool ok = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (size_t j = 0; j < n; ++j) xnew[j] = x[j] + t * dir[j];
            fnew = fn(xnew, gnew);
            if (std::isfinite(fnew) && fnew <= f + opt.armijo_c1 * t * slope) {
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if (!ok) {
            if (!s_list.empty()) {  // retry once from steepest descent
                s_list.clear();
                y_list.clear();
                rho_list.clear();
                continue;
            }
            rep.converged = true;  // cannot decrease along -g: stationary to machine precision
            break;
        }

        // curvature update
        std::vector<double> s(n), y(n);
        for (size_t j = 0; j < n; ++j) {
            s[j] = xnew[j] - x[j];
            y[j] = gnew[j] - g[j];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * norm(s) * norm(y)) {
            if (static_cast<int>(s_list.size()) == opt.memory) {
                s_list.erase(s_list.begin());
                y_list.erase(y_list.begin());
                rho_list.erase(rho_list.begin());
            }
            s_list.push_back(std::move(s));
            y_list.push_back(std::move(y));
            rho_list.push_back(1.0 / sy);
        }

        const double change = std::abs(f - fnew);
        x.swap(xnew);
        g.swap(gnew);
        f = fnew;
        ++rep.iterations;

        if (change <= opt.rel_tol * std::max(1.0, std::abs(f)))
            ++streak;
        else
            streak = 0;
        if (streak >= opt.tol_streak) {
            rep.converged = true;
            break;
        }
    }

    rep.value = f;
    rep.grad_norm = norm(g);
    return rep;
}

}  // namespace qmetro
