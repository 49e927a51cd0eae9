#include "luwang.hpp"

#include <cmath>
#include <sstream>

namespace qmetro {

LwurSpec make_lwur_spec(double f11, double f22, double c_tilde) {
    if (!(f11 > 0.0) || !(f22 > 0.0)) {
        std::ostringstream os;
        os << "lwur spec: diagonal QFI entries must be positive (got " << f11 << ", " << f22 << ")";
        fail(errc::validation, os.str());
    }
    if (!(c_tilde >= 0.0) || c_tilde > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "lwur spec: c~ = " << c_tilde << " outside [0, 1]";
        fail(errc::validation, os.str());
    }
    return LwurSpec{f11, f22, std::min(c_tilde, 1.0)};
}

namespace {

// 1 - c~^2 without cancellation near c~ = 1.
double s_squared(double c) { return (1.0 - c) * (1.0 + c); }

double gamma_of(double v, double f, int which) {
    const double g = 1.0 / (v * f);
    if (g > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "lwur_slack: v" << which << " = " << v << " is below the single-parameter SLDCRB 1/F" << which
           << which << " = " << 1.0 / f;
        fail(errc::domain, os.str());
    }
    return std::min(g, 1.0);
}

}  // namespace

double lwur_slack(double v1, double v2, const LwurSpec& spec) {
    const double g1 = gamma_of(v1, spec.f11, 1);
    const double g2 = gamma_of(v2, spec.f22, 2);
    const double s2 = s_squared(spec.c_tilde);
    return g1 + g2 - 2.0 * std::sqrt(s2 * (1.0 - g1) * (1.0 - g2)) - (2.0 - spec.c_tilde * spec.c_tilde);
}

double lwb_closed_c1(double f11, double f22) {
    if (!(f11 > 0.0) || !(f22 > 0.0)) fail(errc::validation, "lwb_closed_c1: QFI entries must be positive");
    const double t = 1.0 / std::sqrt(f11) + 1.0 / std::sqrt(f22);
    return t * t;
}

double lwb_closed_c0(double f11, double f22) {
    if (!(f11 > 0.0) || !(f22 > 0.0)) fail(errc::validation, "lwb_closed_c0: QFI entries must be positive");
    return 1.0 / f11 + 1.0 / f22;
}

namespace {

// The boundary parameterized by gamma_1 in [1-c~^2, 1]:
//   sqrt(1-gamma_2) = c~ sqrt(gamma_1) - s sqrt(1-gamma_1),  s = sqrt(1-c~^2),
// which is the substitution-checked root of the quadratic left after
// isolating the square root in the LWUR equality.
struct BoundaryEval {
    double g2, v1, v2, sum;
    double y, x;  // y = sqrt(1-gamma_2), x = sqrt(1-gamma_1)
};

BoundaryEval boundary_at(double g1, const LwurSpec& spec, double s) {
    BoundaryEval b;
    b.x = std::sqrt(std::max(0.0, 1.0 - g1));
    b.y = spec.c_tilde * std::sqrt(g1) - s * b.x;
    b.g2 = (1.0 - b.y) * (1.0 + b.y);
    b.v1 = 1.0 / (g1 * spec.f11);
    b.v2 = 1.0 / (b.g2 * spec.f22);
    b.sum = b.v1 + b.v2;
    return b;
}

// d(v1+v2)/d(gamma_1) along the boundary.
double boundary_deriv(double g1, const LwurSpec& spec, double s) {
    const BoundaryEval b = boundary_at(g1, spec, s);
    const double dv1 = -1.0 / (g1 * g1 * spec.f11);
    const double dy = 0.5 * spec.c_tilde / std::sqrt(g1) + (b.x > 0.0 ? 0.5 * s / b.x : 1e300);
    const double dg2 = -2.0 * b.y * dy;
    const double dv2 = -dg2 / (b.g2 * b.g2 * spec.f22);
    return dv1 + dv2;
}

}  // namespace

LwbResult lwb_numeric(const LwurSpec& spec) {
    const double c = spec.c_tilde;
    const double s2 = s_squared(c);
    const double s = std::sqrt(s2);
    const double glo = s2;  // gamma_1 below this leaves the boundary (y < 0)
    const double ghi = 1.0;
    const double width = ghi - glo;

    LwbResult r;
    r.path = LwbPath::numeric;
    r.boundary_active = true;

    double a = glo + 1e-12 * width;
    double b = ghi - 1e-12 * width;
    if (!(b > a)) {
        // Degenerate window (c~ ~ 0): the boundary collapses to the corner
        // gamma_1 = gamma_2 = 1.
        a = b = std::min(1.0, std::max(glo, 0.5 * (glo + ghi)));
    } else {
        // Golden-section bracket refinement, then bisection on the analytic
        // derivative (one sign change: sum decreases off the left end and
        // blows up at the right end).
        const double invphi = 0.6180339887498949;
        double x1 = b - invphi * (b - a);
        double x2 = a + invphi * (b - a);
        double f1 = boundary_at(x1, spec, s).sum;
        double f2 = boundary_at(x2, spec, s).sum;
        for (int it = 0; it < 80 && (b - a) > 1e-14 * width; ++it) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = boundary_at(x1, spec, s).sum;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = boundary_at(x2, spec, s).sum;
            }
        }
        // Polish: bisection on the derivative sign inside [a, b] (widen the
        // bracket if the golden section stopped short of the sign change).
        double lo = a, hi = b;
        while (boundary_deriv(lo, spec, s) > 0.0 && lo > glo + 1e-13 * width) lo = std::max(glo + 1e-13 * width, lo - (hi - lo));
        while (boundary_deriv(hi, spec, s) < 0.0 && hi < ghi - 1e-13 * width) hi = std::min(ghi - 1e-13 * width, hi + (hi - lo));
        for (int it = 0; it < 200 && (hi - lo) > 1e-17 * (std::abs(lo) + std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (boundary_deriv(mid, spec, s) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        a = b = 0.5 * (lo + hi);
    }

    const BoundaryEval opt = boundary_at(a, spec, s);
    r.v1 = opt.v1;
    r.v2 = opt.v2;
    r.value = opt.sum;
    r.g1_active = a >= 1.0 - 1e-12;
    r.g2_active = opt.g2 >= 1.0 - 1e-12;
    r.feas_residual = std::abs(lwur_slack(r.v1, r.v2, spec));

    // KKT: grad(v1+v2) + eta grad(slack) = 0 solved in least squares; the
    // residual norm certifies stationarity.
    const double g1 = a;
    const double h1 = -(g1 / r.v1) * (1.0 + (opt.x > 0.0 ? s * opt.y / opt.x : 0.0));
    const double h2 = -(opt.g2 / r.v2) * (1.0 + (opt.y > 0.0 ? s * opt.x / opt.y : 0.0));
    const double eta = -(h1 + h2) / (h1 * h1 + h2 * h2);
    const double res1 = 1.0 + eta * h1;
    const double res2 = 1.0 + eta * h2;
    r.dual_eta = eta;
    r.kkt_residual = std::sqrt(res1 * res1 + res2 * res2);
    return r;
}

LwbResult lwb(const LwurSpec& spec) {
    make_lwur_spec(spec.f11, spec.f22, spec.c_tilde);  // re-validate
    if (spec.c_tilde >= 1.0 - 1e-12) {
        LwbResult r;
        r.path = LwbPath::closed_c1;
        r.value = lwb_closed_c1(spec.f11, spec.f22);
        const double rf11 = 1.0 / std::sqrt(spec.f11);
        const double rf22 = 1.0 / std::sqrt(spec.f22);
        r.v1 = rf11 * (rf11 + rf22);
        r.v2 = rf22 * (rf11 + rf22);
        r.boundary_active = true;
        r.feas_residual = std::abs(lwur_slack(r.v1, r.v2, spec));
        // At c~ = 1 the two stationarity components coincide: h1 = h2 = -1/value,
        // so the multiplier is exactly the bound and the residual vanishes.
        r.dual_eta = r.value;
        r.kkt_residual = 0.0;
        return r;
    }
    if (spec.c_tilde <= 1e-12) {
        LwbResult r;
        r.path = LwbPath::closed_c0;
        r.value = lwb_closed_c0(spec.f11, spec.f22);
        r.v1 = 1.0 / spec.f11;
        r.v2 = 1.0 / spec.f22;
        r.boundary_active = true;  // degenerate: the corner sits on the equality locus
        r.g1_active = true;
        r.g2_active = true;
        r.feas_residual = std::abs(lwur_slack(r.v1, r.v2, spec));
        r.dual_eta = 0.0;
        r.kkt_residual = 0.0;
        return r;
    }
    return lwb_numeric(spec);
}

Curve lwur_boundary_curve(const LwurSpec& spec, const std::vector<double>& v1_grid) {
    make_lwur_spec(spec.f11, spec.f22, spec.c_tilde);
    Curve curve;
    curve.descriptor = "lwur";
    const double s = std::sqrt(s_squared(spec.c_tilde));
    double prev_v1 = -1.0;
    for (size_t i = 0; i < v1_grid.size(); ++i) {
        const double v1 = v1_grid[i];
        if (v1 <= prev_v1) fail(errc::bad_argument, "lwur_boundary_curve: v1 grid must be strictly increasing");
        prev_v1 = v1;
        const double g1 = gamma_of(v1, spec.f11, 1);  // domain error below 1/F11
        const double y = spec.c_tilde * std::sqrt(g1) - s * std::sqrt(std::max(0.0, 1.0 - g1));
        double v2;
        if (y <= 0.0) {
            // LWUR imposes nothing here; boundary follows the box edge.
            v2 = 1.0 / spec.f22;
        } else {
            const double g2 = (1.0 - y) * (1.0 + y);
            if (g2 <= 1e-15) {
                curve.dropped.push_back(static_cast<int>(i));
                continue;
            }
            v2 = 1.0 / (g2 * spec.f22);
            if (std::abs(lwur_slack(v1, v2, spec)) > 1e-10) {
                curve.dropped.push_back(static_cast<int>(i));
                continue;
            }
        }
        curve.pts.push_back({v1, v2});
    }
    return curve;
}

}  // namespace qmetro
