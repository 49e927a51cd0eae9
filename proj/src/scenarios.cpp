#include "scenarios.hpp"

#include <cmath>
#include <string>

namespace qmetro {

namespace {

constexpr double kSecTol = 1e-12;  // |cos theta| below this counts as pi/2

cmat pauli_x() {
    cmat m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

cmat pauli_y() {
    cmat m(2);
    m(0, 1) = cx(0.0, -1.0);
    m(1, 0) = cx(0.0, 1.0);
    return m;
}

void check_config(const RotationsConfig& cfg) {
    if (!(cfg.r > 0.0) || cfg.r > 1.0)
        fail(errc::validation, "Bloch length r must lie in (0, 1], got " +
                                   std::to_string(cfg.r));
    if (!std::isfinite(cfg.theta) || !std::isfinite(cfg.phi))
        fail(errc::validation, "angles must be finite");
}

}  // namespace

Problem rotations_problem(const RotationsConfig& cfg) {
    check_config(cfg);
    const double st = std::sin(cfg.theta), ct = std::cos(cfg.theta);
    const double sp = std::sin(cfg.phi), cp = std::cos(cfg.phi);
    cmat rho(2);
    rho(0, 0) = 0.5 * (1.0 + cfg.r * ct);
    rho(1, 1) = 0.5 * (1.0 - cfg.r * ct);
    rho(0, 1) = 0.5 * cfg.r * st * cx(cp, -sp);
    rho(1, 0) = std::conj(rho(0, 1));
    const cx half_i(0.0, 0.5);
    cmat d1 = half_i * commutator(rho, pauli_x());
    cmat d2 = half_i * commutator(rho, pauli_y());
    return make_problem(std::move(rho), hermitize(d1), hermitize(d2));
}

ReferenceValues rotations_reference(const RotationsConfig& cfg) {
    check_config(cfg);
    const double st = std::sin(cfg.theta), ct = std::cos(cfg.theta);
    const double sp = std::sin(cfg.phi), cp = std::cos(cfg.phi);
    const double r2 = cfg.r * cfg.r;

    ReferenceValues ref;
    ref.qfi.m[0][0] = r2 * (1.0 - cp * cp * st * st);
    ref.qfi.m[1][1] = r2 * (1.0 - sp * sp * st * st);
    ref.qfi.m[0][1] = ref.qfi.m[1][0] = -r2 * sp * cp * st * st;

    const double g1 = ct * ct + cp * cp * st * st;
    const double g2 = ct * ct + sp * sp * st * st;
    ref.c_tilde = std::abs(ct) / std::sqrt(g1 * g2);

    if (std::abs(ct) < kSecTol) {
        ref.ncrb_infinite = true;
        ref.hcrb_infinite = true;
    } else {
        const double sec = std::abs(1.0 / ct);
        ref.ncrb = (1.0 + sec) * (1.0 + sec) / r2;
        ref.hcrb = (1.0 + 2.0 * cfg.r * sec + sec * sec) / r2;
        ref.has_hcrb = cfg.r < 1.0;
    }

    const double qpi = std::acos(0.0) / 2.0;  // pi/4
    if (std::abs(cfg.theta - qpi) <= kSecTol && std::abs(cfg.phi - qpi) <= kSecTol) {
        ref.has_lwb = true;
        ref.lwb = 4.0 / r2;
    } else if (std::abs(ct) < kSecTol && std::min(std::abs(sp), std::abs(cp)) > 1e-9) {
        ref.has_lwb = true;
        ref.lwb = 1.0 / (r2 * sp * sp) + 1.0 / (r2 * cp * cp);
    }
    return ref;
}

std::pair<Problem, double> equal_bounds_problem(int d) {
    if (d < 2) fail(errc::validation, "dimension must be at least 2");
    cmat rho(d);
    const double bulk = 1.0 / (d - 0.5);
    double last = 1.0;
    for (int i = 0; i + 1 < d; ++i) {
        rho(i, i) = bulk;
        last -= bulk;
    }
    rho(d - 1, d - 1) = last;

    cmat m1(d), m2(d);
    m1(0, d - 1) = 1.0;
    m1(d - 1, 0) = 1.0;
    m2(0, d - 1) = cx(0.0, -1.0);
    m2(d - 1, 0) = cx(0.0, 1.0);

    const cx half_i(0.0, 0.5);
    cmat d1 = half_i * commutator(rho, m1);
    cmat d2 = half_i * commutator(rho, m2);
    Problem p = make_problem(std::move(rho), hermitize(d1), hermitize(d2));
    return {std::move(p), 12.0 * (2.0 * d - 1.0)};
}

}  // namespace qmetro
