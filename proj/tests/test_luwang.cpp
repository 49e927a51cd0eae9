#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "luwang.hpp"
#include "model.hpp"
#include "scenarios.hpp"

using namespace qmetro;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("make_lwur_spec validates and clamps") {
    auto f_bad = trap([] { make_lwur_spec(-1.0, 9.0, 0.5); });
    REQUIRE(f_bad.threw);
    CHECK(f_bad.code == errc::validation);

    auto c_bad = trap([] { make_lwur_spec(4.0, 9.0, 1.5); });
    REQUIRE(c_bad.threw);
    CHECK(c_bad.code == errc::validation);
    CHECK(contains(c_bad.message, "c~"));

    // just above 1 is rounding noise and clamps
    LwurSpec s = make_lwur_spec(4.0, 9.0, 1.0 + 5e-10);
    CHECK(s.c_tilde == 1.0);
}

TEST_CASE("lwur_slack golden point: rotations r=1 at theta=phi=pi/4") {
    // F11 = F22 = 3/4, c~ = 2 sqrt2/3; (v1,v2) = (2,2) sits exactly on the
    // boundary, larger v is feasible, smaller v violates the relation
    LwurSpec spec = make_lwur_spec(0.75, 0.75, 2.0 * std::sqrt(2.0) / 3.0);
    CHECK(lwur_slack(2.0, 2.0, spec) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lwur_slack(2.5, 2.5, spec) < 0.0);
    CHECK(lwur_slack(1.4, 1.4, spec) > 0.0);
}

TEST_CASE("lwur_slack rejects points below the single-parameter bound") {
    LwurSpec spec = make_lwur_spec(0.75, 0.75, 0.5);
    auto c = trap([&] { lwur_slack(1.0, 2.0, spec); });  // v1 < 1/F11 = 4/3
    REQUIRE(c.threw);
    CHECK(c.code == errc::domain);
    CHECK(contains(c.message, "single-parameter"));
}

TEST_CASE("closed forms at the ends of the c~ range") {
    CHECK(lwb_closed_c1(4.0, 9.0) == doctest::Approx(25.0 / 36.0).epsilon(1e-15));
    CHECK(lwb_closed_c0(4.0, 9.0) == doctest::Approx(13.0 / 36.0).epsilon(1e-15));

    LwbResult r1 = lwb(make_lwur_spec(4.0, 9.0, 1.0));
    CHECK(r1.path == LwbPath::closed_c1);
    CHECK(r1.value == doctest::Approx(25.0 / 36.0));
    CHECK(r1.v1 + r1.v2 == doctest::Approx(r1.value));
    CHECK(r1.feas_residual < 1e-12);

    LwbResult r0 = lwb(make_lwur_spec(4.0, 9.0, 0.0));
    CHECK(r0.path == LwbPath::closed_c0);
    CHECK(r0.value == doctest::Approx(13.0 / 36.0));
    CHECK(r0.v1 == doctest::Approx(0.25));
    CHECK(r0.v2 == doctest::Approx(1.0 / 9.0));
    CHECK(r0.g1_active);
    CHECK(r0.g2_active);
}

TEST_CASE("numeric path agrees with the closed forms at the endpoints") {
    // run the numeric optimizer at the exact ends where the answer is known
    LwbResult hi = lwb_numeric(make_lwur_spec(4.0, 9.0, 1.0));
    CHECK(hi.value == doctest::Approx(lwb_closed_c1(4.0, 9.0)).epsilon(1e-6));

    // near c~ = 0 the optimum collapses to the corner within O(c~^2)
    LwbResult lo = lwb(make_lwur_spec(4.0, 9.0, 1e-4));
    CHECK(lo.path == LwbPath::numeric);
    CHECK(lo.value == doctest::Approx(lwb_closed_c0(4.0, 9.0)).epsilon(1e-6));

    LwbResult hi2 = lwb(make_lwur_spec(4.0, 9.0, 1.0 - 1e-9));
    CHECK(hi2.path == LwbPath::numeric);
    CHECK(hi2.value == doctest::Approx(lwb_closed_c1(4.0, 9.0)).epsilon(1e-6));
}

TEST_CASE("numeric path satisfies its own certificates") {
    LwbResult r = lwb(make_lwur_spec(4.0, 9.0, 0.6));
    CHECK(r.path == LwbPath::numeric);
    CHECK(r.boundary_active);
    CHECK(r.kkt_residual <= 1e-9);
    CHECK(r.feas_residual <= 1e-9);
    CHECK(r.value == doctest::Approx(r.v1 + r.v2));
    CHECK(r.dual_eta > 0.0);

    // the optimizer really is a boundary minimum: nearby boundary points cost more
    const double s = std::sqrt(1.0 - 0.36);
    auto v_of = [&](double g1) {
        double y = 0.6 * std::sqrt(g1) - s * std::sqrt(1.0 - g1);
        double g2 = (1.0 - y) * (1.0 + y);
        return 1.0 / (g1 * 4.0) + 1.0 / (g2 * 9.0);
    };
    double gopt = 1.0 / (r.v1 * 4.0);
    CHECK(v_of(gopt) <= v_of(gopt + 1e-4) + 1e-12);
    CHECK(v_of(gopt) <= v_of(gopt - 1e-4) + 1e-12);
}

TEST_CASE("lwb grows with incompatibility") {
    double prev = 0.0;
    for (double ct : {0.0, 0.2, 0.5, 0.8, 0.95, 1.0}) {
        double v = lwb(make_lwur_spec(4.0, 9.0, ct)).value;
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("rotation family LWB goldens") {
    // theta = phi = pi/4: LWB = 4/r^2
    for (double r : {0.25, 0.5, 1.0}) {
        Problem p = rotations_problem({r, kPi / 4.0, kPi / 4.0});
        r2x2 f = sld_qfi(p);
        LwurSpec spec = make_lwur_spec(f.m[0][0], f.m[1][1], incompatibility(p));
        LwbResult res = lwb(spec);
        CHECK(res.value == doctest::Approx(4.0 / (r * r)).epsilon(1e-8));
        if (r < 1.0) CHECK(res.path == LwbPath::numeric);
        CHECK(res.kkt_residual <= 1e-9);
    }

    // theta = pi/2: derivatives commute on the state, c~ = 0, and the bound
    // splits into the two single-parameter terms
    Problem p = rotations_problem({0.5, kPi / 2.0, kPi / 3.0});
    r2x2 f = sld_qfi(p);
    LwurSpec spec = make_lwur_spec(f.m[0][0], f.m[1][1], incompatibility(p));
    LwbResult res = lwb(spec);
    CHECK(res.path == LwbPath::closed_c0);
    CHECK(res.value == doctest::Approx(64.0 / 3.0).epsilon(1e-10));

    ReferenceValues ref = rotations_reference({0.5, kPi / 2.0, kPi / 3.0});
    REQUIRE(ref.has_lwb);
    CHECK(res.value == doctest::Approx(ref.lwb).epsilon(1e-12));
}

TEST_CASE("lwur_boundary_curve: shape, slack, box edge") {
    LwurSpec spec = make_lwur_spec(4.0, 9.0, 0.6);
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(0.26 + i * 0.01);
    Curve c = lwur_boundary_curve(spec, grid);
    REQUIRE(c.pts.size() + c.dropped.size() == grid.size());

    const double box_v1 = 1.0 / ((1.0 - 0.36) * 4.0);  // gamma_1 = 1 - c~^2
    for (size_t i = 0; i < c.pts.size(); ++i) {
        if (i > 0) {
            CHECK(c.pts[i][0] > c.pts[i - 1][0]);
            CHECK(c.pts[i][1] <= c.pts[i - 1][1] + 1e-12);
        }
        if (c.pts[i][0] < box_v1 - 1e-9) {
            // on the LWUR equality locus
            CHECK(std::abs(lwur_slack(c.pts[i][0], c.pts[i][1], spec)) < 1e-10);
        } else if (c.pts[i][0] > box_v1 + 1e-9) {
            // past the elbow only the single-parameter bound is left
            CHECK(c.pts[i][1] == doctest::Approx(1.0 / 9.0));
        }
    }
}

TEST_CASE("lwur_boundary_curve edge cases") {
    // at c~ = 1 the grid point v1 = 1/F11 sends v2 to infinity and is dropped
    LwurSpec spec = make_lwur_spec(4.0, 9.0, 1.0);
    Curve c = lwur_boundary_curve(spec, {0.25, 0.5, 1.0});
    REQUIRE(c.dropped.size() == 1);
    CHECK(c.dropped[0] == 0);
    CHECK(c.pts.size() == 2);

    // below the single-parameter bound the curve is undefined outright
    auto dom = trap([&] { lwur_boundary_curve(spec, {0.2, 0.5}); });
    REQUIRE(dom.threw);
    CHECK(dom.code == errc::domain);

    // grids must be strictly increasing
    auto ord = trap([&] { lwur_boundary_curve(spec, {0.5, 0.5}); });
    REQUIRE(ord.threw);
    CHECK(ord.code == errc::bad_argument);
}
