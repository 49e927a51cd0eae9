#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "model.hpp"
#include "randomgen.hpp"
#include "scenarios.hpp"
#include "solver.hpp"

using namespace qmetro;

namespace {

const double kPi = std::acos(-1.0);

// Exact qubit HCRB through the 1-free-direction chart: with X_i(t) =
// part_i + t_i N the objective is h(t) = nu t^T W t + b.t + q0 + c|k0 + g.t|,
// a 2-d convex piecewise-quadratic whose minimum is one of three candidates
// (the two unconstrained sign branches and the kink line k0 + g.t = 0).
double exact_qubit_hcrb(const Problem& p, const Weight& w) {
    UnbiasedChart ch = unbiased_chart(p);
    cmat n_op = unpack_hermitian(ch.d, std::vector<double>(ch.basis.begin(), ch.basis.end()));
    cmat x1 = unpack_hermitian(ch.d, ch.part1);
    cmat x2 = unpack_hermitian(ch.d, ch.part2);
    const cmat& rho = p.rho;
    double nu = trace(rho * n_op * n_op).real();
    cx z11 = trace(rho * x1 * x1), z22 = trace(rho * x2 * x2), z12 = trace(rho * x1 * x2);
    cx t1n = trace(rho * x1 * n_op);
    cx t2n = trace(rho * x2 * n_op);
    cx nt2 = trace(rho * n_op * x2);
    double q0 = w.w11 * z11.real() + w.w22 * z22.real() + 2 * w.w12 * z12.real();
    double b1 = 2 * w.w11 * t1n.real() + 2 * w.w12 * nt2.real();
    double b2 = 2 * w.w22 * t2n.real() + 2 * w.w12 * t1n.real();
    double k0 = z12.imag();
    double g1 = nt2.imag();
    double g2 = t1n.imag();
    double c = 2 * std::sqrt(w.det());
    double a[2][2] = {{2 * nu * w.w11, 2 * nu * w.w12}, {2 * nu * w.w12, 2 * nu * w.w22}};
    double det_a = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    auto qval = [&](double t1, double t2) {
        return nu * (w.w11 * t1 * t1 + 2 * w.w12 * t1 * t2 + w.w22 * t2 * t2) + b1 * t1 + b2 * t2 + q0;
    };
    auto lin = [&](double t1, double t2) { return k0 + g1 * t1 + g2 * t2; };
    double best = 1e300;
    for (int sgn = -1; sgn <= 1; sgn += 2) {
        // minimize q + sgn*c*l over the region sgn*l >= 0
        double r1 = -(b1 + sgn * c * g1), r2 = -(b2 + sgn * c * g2);
        double t1 = (a[1][1] * r1 - a[0][1] * r2) / det_a;
        double t2 = (-a[1][0] * r1 + a[0][0] * r2) / det_a;
        if (sgn * lin(t1, t2) >= -1e-14) {
            double v = qval(t1, t2) + sgn * c * lin(t1, t2);
            if (v < best) best = v;
        }
    }
    // candidate on the kink line: solve [A -g; g^T 0][t;m] = [-b;-k0]
    {
        double m[3][3] = {{a[0][0], a[0][1], -g1}, {a[1][0], a[1][1], -g2}, {g1, g2, 0}};
        double rhs[3] = {-b1, -b2, -k0};
        bool ok = true;
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            std::swap(m[col], m[piv]);
            std::swap(rhs[col], rhs[piv]);
            if (std::abs(m[col][col]) < 1e-300) {
                ok = false;
                break;
            }
            for (int r = col + 1; r < 3; ++r) {
                double f = m[r][col] / m[col][col];
                for (int cc = col; cc < 3; ++cc) m[r][cc] -= f * m[col][cc];
                rhs[r] -= f * rhs[col];
            }
        }
        if (ok) {
            double t3 = rhs[2] / m[2][2];
            double t2 = (rhs[1] - m[1][2] * t3) / m[1][1];
            double t1 = (rhs[0] - m[0][1] * t2 - m[0][2] * t3) / m[0][0];
            double v = qval(t1, t2) + c * std::abs(lin(t1, t2));
            if (v < best) best = v;
        }
    }
    return best;
}

r2x2 sym2(double a, double c, double b) {
    r2x2 f;
    f.m[0][0] = a;
    f.m[0][1] = f.m[1][0] = c;
    f.m[1][1] = b;
    return f;
}

}  // namespace

TEST_CASE("weight constructors gate positive definiteness") {
    auto indef = trap([] { make_weight(1.0, 2.0, 1.0); });
    REQUIRE(indef.threw);
    CHECK(indef.code == errc::validation);

    auto neg = trap([] { make_weight(-1.0, 0.0, 1.0); });
    REQUIRE(neg.threw);
    CHECK(neg.code == errc::validation);

    auto zero = trap([] { scalar_weight(0.0); });
    REQUIRE(zero.threw);
    CHECK(zero.code == errc::validation);
    auto two = trap([] { scalar_weight(2.0); });
    REQUIRE(two.threw);
    CHECK(two.code == errc::validation);

    Weight w = scalar_weight(0.5);
    CHECK(w.w11 == 0.5);
    CHECK(w.w12 == 0.0);
    CHECK(w.w22 == 1.5);
}

TEST_CASE("closed-form bounds on a diagonal QFI") {
    r2x2 f = sym2(4.0, 0.0, 9.0);
    Weight id = make_weight(1.0, 0.0, 1.0);
    CHECK(sld_crb(f, id) == doctest::Approx(13.0 / 36.0).epsilon(1e-15));
    // + 2 sqrt(det W / det F) = + 2/6
    CHECK(ncrb_qubit(f, id) == doctest::Approx(25.0 / 36.0).epsilon(1e-15));

    // singular QFI: both become infinite, no exception
    r2x2 sing = sym2(1.0, 1.0, 1.0);
    CHECK(std::isinf(sld_crb(sing, id)));
    CHECK(std::isinf(ncrb_qubit(sing, id)));
}

TEST_CASE("rotation golden quadruple at r=1/2, theta=phi=pi/4") {
    Problem p = rotations_problem({0.5, kPi / 4.0, kPi / 4.0});
    r2x2 f = sld_qfi(p);
    Weight id = make_weight(1.0, 0.0, 1.0);
    const double s2 = std::sqrt(2.0);

    CHECK(sld_crb(f, id) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(ncrb_qubit(f, id) == doctest::Approx(12.0 + 8.0 * s2).epsilon(1e-12));
    CHECK(hcrb_qubit(p, id) == doctest::Approx(12.0 + 4.0 * s2).epsilon(1e-12));
}

TEST_CASE("general solvers reproduce the qubit closed forms on rotations") {
    for (double theta : {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
        Problem p = rotations_problem({0.5, theta, kPi / 5.0});
        r2x2 f = sld_qfi(p);
        Weight id = make_weight(1.0, 0.0, 1.0);
        BoundResult n = ncrb_general(p, id);
        BoundResult h = hcrb_general(p, id);
        CHECK(n.value == doctest::Approx(ncrb_qubit(f, id)).epsilon(1e-7));
        CHECK(h.value == doctest::Approx(hcrb_qubit(p, id)).epsilon(1e-7));
    }
}

TEST_CASE("hcrb_general matches the exact qubit minimizer") {
    // the variational solver against an independent closed-form solution of
    // the same convex program, random states and random weights
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        Rng rng(42, static_cast<std::uint64_t>(i));
        Problem q = random_problem(2, rng);
        double a = 0.5 + rng.uniform01(), b = 0.5 + rng.uniform01();
        double off = (rng.uniform01() - 0.5) * std::sqrt(a * b);
        for (const Weight& w : {make_weight(1.0, 0.0, 1.0), make_weight(a, off, b)}) {
            double ex = exact_qubit_hcrb(q, w);
            BoundResult gen = hcrb_general(q, w);
            double rel = std::abs(gen.value - ex) / std::max(1.0, ex);
            if (rel > worst) worst = rel;
            CHECK(rel <= 1e-6);

            // the RLD closed form can only undershoot the true HCRB
            CHECK(hcrb_qubit(q, w) <= ex + 1e-7 * std::max(1.0, ex));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("ncrb_general agrees with the qubit closed form on random states") {
    for (int i = 0; i < 10; ++i) {
        Rng rng(301, static_cast<std::uint64_t>(i));
        Problem p = random_problem(2, rng);
        r2x2 f = sld_qfi(p);
        Weight id = make_weight(1.0, 0.0, 1.0);
        BoundResult n = ncrb_general(p, id);
        CHECK(n.value == doctest::Approx(ncrb_qubit(f, id)).epsilon(1e-7));
    }
}

TEST_CASE("bound ordering SLDCRB <= HCRB <= NCRB") {
    for (int i = 0; i < 6; ++i) {
        Rng rng(302, static_cast<std::uint64_t>(i));
        Problem p = random_problem(2 + (i % 2), rng);
        r2x2 f = sld_qfi(p);
        Weight id = make_weight(1.0, 0.0, 1.0);
        double s = sld_crb(f, id);
        double h = hcrb_general(p, id).value;
        double n = ncrb_general(p, id).value;
        CHECK(s <= h + 1e-7 * (1.0 + std::abs(h)));
        CHECK(h <= n + 1e-7 * (1.0 + std::abs(n)));
    }
}

TEST_CASE("pure states: Nagaoka and Holevo bounds coincide") {
    for (int i = 0; i < 8; ++i) {
        Rng rng(303, static_cast<std::uint64_t>(i));
        Problem p = random_pure_problem(2 + (i % 2), rng);
        Weight id = make_weight(1.0, 0.0, 1.0);
        double h = hcrb_general(p, id).value;
        double n = ncrb_general(p, id).value;
        CHECK(std::abs(h - n) / n <= 1e-5);
    }
}

TEST_CASE("reparameterization: C(A d, W) = C(d, A^-1 W A^-T)") {
    Rng rng(304);
    Problem p = random_problem(2, rng);
    const double a11 = 1.3, a12 = 0.4, a21 = -0.2, a22 = 0.9;
    const double det_a = a11 * a22 - a12 * a21;

    Problem pt = make_problem(p.rho, cx(a11, 0.0) * p.drho1 + cx(a12, 0.0) * p.drho2,
                              cx(a21, 0.0) * p.drho1 + cx(a22, 0.0) * p.drho2);

    Weight w = make_weight(1.2, 0.3, 0.9);
    // A^-1 W A^-T, worked out entrywise
    const double i11 = a22 / det_a, i12 = -a12 / det_a, i21 = -a21 / det_a, i22 = a11 / det_a;
    const double t11 = i11 * w.w11 + i12 * w.w12, t12 = i11 * w.w12 + i12 * w.w22;
    const double t21 = i21 * w.w11 + i22 * w.w12, t22 = i21 * w.w12 + i22 * w.w22;
    Weight wt = make_weight(t11 * i11 + t12 * i12, t11 * i21 + t12 * i22, t21 * i21 + t22 * i22);

    // exact for the closed forms (the QFI transforms as A F A^T)
    r2x2 f = sld_qfi(p);
    r2x2 ft = sld_qfi(pt);
    CHECK(sld_crb(ft, w) == doctest::Approx(sld_crb(f, wt)).epsilon(1e-10));
    CHECK(ncrb_qubit(ft, w) == doctest::Approx(ncrb_qubit(f, wt)).epsilon(1e-10));

    // and within solver tolerance for the variational bounds
    CHECK(hcrb_general(pt, w).value == doctest::Approx(hcrb_general(p, wt).value).epsilon(1e-6));
    CHECK(ncrb_general(pt, w).value == doctest::Approx(ncrb_general(p, wt).value).epsilon(1e-6));
}

TEST_CASE("bounds scale linearly and monotonically in the weight") {
    Rng rng(305);
    Problem p = random_problem(2, rng);
    Weight w = make_weight(1.0, 0.2, 0.8);
    Weight ws = make_weight(2.5, 0.5, 2.0);  // 2.5 * w
    r2x2 f = sld_qfi(p);

    CHECK(sld_crb(f, ws) == doctest::Approx(2.5 * sld_crb(f, w)).epsilon(1e-12));
    CHECK(ncrb_qubit(f, ws) == doctest::Approx(2.5 * ncrb_qubit(f, w)).epsilon(1e-12));
    CHECK(hcrb_qubit(p, ws) == doctest::Approx(2.5 * hcrb_qubit(p, w)).epsilon(1e-12));
    CHECK(hcrb_general(p, ws).value == doctest::Approx(2.5 * hcrb_general(p, w).value).epsilon(1e-6));

    // W2 - W1 PSD implies C(W1) <= C(W2)
    Weight bigger = make_weight(1.3, 0.2, 0.9);
    CHECK(ncrb_general(p, w).value <= ncrb_general(p, bigger).value + 1e-9);
    CHECK(hcrb_general(p, w).value <= hcrb_general(p, bigger).value + 1e-9);
}

TEST_CASE("hcrb_qubit edge cases") {
    Weight id = make_weight(1.0, 0.0, 1.0);

    // singular QFI short-circuits to +inf before the RLD is attempted
    Problem sing = rotations_problem({0.5, kPi / 2.0, kPi / 4.0});
    CHECK(std::isinf(hcrb_qubit(sing, id)));

    // pure state with nonsingular QFI: the RLD itself is undefined
    Rng rng(306);
    Problem pure = random_pure_problem(2, rng);
    auto c = trap([&] { hcrb_qubit(pure, id); });
    REQUIRE(c.threw);
    CHECK(c.code == errc::rank_deficient);

    Rng rng2(307);
    Problem qutrit = random_problem(3, rng2);
    auto dim = trap([&] { hcrb_qubit(qutrit, id); });
    REQUIRE(dim.threw);
    CHECK(dim.code == errc::dimension);
}

TEST_CASE("general solvers report their diagnostics") {
    Rng rng(308);
    Problem p = random_problem(2, rng);
    BoundResult r = ncrb_general(p, make_weight(1.0, 0.0, 1.0));
    CHECK(r.converged);
    CHECK(r.has_optimizer);
    CHECK(r.iterations > 0);
    CHECK(r.history_len > r.iterations);
    CHECK(r.final_mu == doctest::Approx(1e-8).epsilon(1e-6));
    CHECK(r.constraint_residual < 1e-9);
    CHECK(unbiased_residual(p, r.x1, r.x2) < 1e-9);
    CHECK(herm_defect(r.x1) < 1e-12 * (1.0 + max_abs(r.x1)));

    // singular QFI: flagged infinite instead of solved
    Problem sing = rotations_problem({0.5, kPi / 2.0, kPi / 4.0});
    BoundResult inf = ncrb_general(sing, make_weight(1.0, 0.0, 1.0));
    CHECK(inf.infinite);
    CHECK(std::isinf(inf.value));
    CHECK(!inf.has_optimizer);

    auto bad = trap([&] { ncrb_general(p, make_weight(1.0, 0.0, 1.0), SolverOptions{0, 1e-2, 1e-8, 0.1, 1e-9, 5, 10}); });
    REQUIRE(bad.threw);
    CHECK(bad.code == errc::bad_argument);
}

TEST_CASE("nagaoka_curve_qubit traces the attainability hyperbola") {
    // F^-1 = [[6,2],[2,6]]: (v1-6)(v2-6) = 32
    r2x2 f = sym2(3.0 / 16.0, -1.0 / 16.0, 3.0 / 16.0);
    Curve c = nagaoka_curve_qubit(f, {6.5, 10.0, 38.0});
    CHECK(c.descriptor == "nagaoka");
    REQUIRE(c.pts.size() == 3);
    CHECK(c.pts[0][1] == doctest::Approx(70.0).epsilon(1e-10));
    CHECK(c.pts[1][0] == 10.0);
    CHECK(c.pts[1][1] == doctest::Approx(14.0).epsilon(1e-10));
    CHECK(c.pts[2][1] == doctest::Approx(7.0).epsilon(1e-10));

    auto dom = trap([&] { nagaoka_curve_qubit(f, {6.0, 10.0}); });
    REQUIRE(dom.threw);
    CHECK(dom.code == errc::domain);
    CHECK(contains(dom.message, "asymptote"));

    auto ord = trap([&] { nagaoka_curve_qubit(f, {10.0, 10.0}); });
    REQUIRE(ord.threw);
    CHECK(ord.code == errc::bad_argument);

    auto sing = trap([] { nagaoka_curve_qubit(sym2(1.0, 1.0, 1.0), {10.0}); });
    REQUIRE(sing.threw);
    CHECK(sing.code == errc::validation);
}

TEST_CASE("envelope vertices support every boundary line and touch their own") {
    r2x2 f = sym2(3.0 / 16.0, -1.0 / 16.0, 3.0 / 16.0);
    auto bound = [&](const Weight& w) { return ncrb_qubit(f, w); };
    std::vector<double> grid = default_envelope_weights(41, 0.25, 4.0);
    Curve env = envelope_from_weighted_bound(bound, grid, "ncrb");
    CHECK(env.descriptor == "ncrb");
    REQUIRE(env.pts.size() >= 2);
    CHECK(env.dropped.empty());

    for (const auto& v : env.pts) {
        double min_slack = 1e300;
        for (double w : grid) {
            double slack = w * v[0] + (2.0 - w) * v[1] - bound(scalar_weight(w));
            CHECK(slack >= -1e-9 * (1.0 + std::abs(v[0]) + std::abs(v[1])));
            min_slack = std::min(min_slack, slack);
        }
        CHECK(min_slack <= 1e-6 * (1.0 + std::abs(v[0])));
    }
    for (size_t i = 1; i < env.pts.size(); ++i) {
        CHECK(env.pts[i][0] > env.pts[i - 1][0]);
        CHECK(env.pts[i][1] <= env.pts[i - 1][1]);
    }
}

TEST_CASE("envelope input validation and degenerate collapse") {
    auto bound = [](const Weight& w) { return w.tr(); };  // constant 2
    // all boundary lines pass through (1,1): the envelope is that single point
    Curve c = envelope_from_weighted_bound(bound, {0.5, 1.0, 1.5}, "flat");
    REQUIRE(c.pts.size() == 1);
    CHECK(c.pts[0][0] == doctest::Approx(1.0));
    CHECK(c.pts[0][1] == doctest::Approx(1.0));

    auto few = trap([&] { envelope_from_weighted_bound(bound, {1.0}, "x"); });
    REQUIRE(few.threw);
    CHECK(few.code == errc::bad_argument);
    auto range = trap([&] { envelope_from_weighted_bound(bound, {1.0, 2.0}, "x"); });
    REQUIRE(range.threw);
    CHECK(range.code == errc::bad_argument);
    auto order = trap([&] { envelope_from_weighted_bound(bound, {1.0, 1.0}, "x"); });
    REQUIRE(order.threw);
    CHECK(order.code == errc::bad_argument);

    // an infinite bound drops its line but the rest still form the envelope
    auto partial = [](const Weight& w) {
        return w.w11 < 0.7 ? std::numeric_limits<double>::infinity() : w.tr() + w.w11;
    };
    Curve pc = envelope_from_weighted_bound(partial, {0.5, 0.9, 1.1, 1.3}, "partial");
    CHECK(pc.dropped.size() == 1);
    CHECK(pc.dropped[0] == 0);
}

TEST_CASE("default_envelope_weights spread and validation") {
    std::vector<double> w = default_envelope_weights(11, 0.25, 4.0);
    REQUIRE(w.size() == 11);
    CHECK(w.front() == doctest::Approx(2.0 / 17.0).epsilon(1e-12));
    CHECK(w.back() == doctest::Approx(32.0 / 17.0).epsilon(1e-12));
    for (size_t i = 1; i < w.size(); ++i) {
        CHECK(w[i] > w[i - 1]);
        CHECK(w[i] > 0.0);
        CHECK(w[i] < 2.0);
    }

    auto n_bad = trap([] { default_envelope_weights(1, 0.25, 4.0); });
    REQUIRE(n_bad.threw);
    CHECK(n_bad.code == errc::bad_argument);
    auto l_bad = trap([] { default_envelope_weights(5, 4.0, 0.25); });
    REQUIRE(l_bad.threw);
    CHECK(l_bad.code == errc::bad_argument);
}
