// Lu-Wang uncertainty relation and bound. The LWUR constrains the MSE
// diagonals (v1, v2) through gamma_j = 1/(v_j F_jj); the LWB is the
// minimum of v1 + v2 over the feasible region. Closed forms exist at
// c~ = 1 and c~ = 0; in between the optimum sits on the LWUR boundary
// and is found by a 1-D search over gamma_1.

#pragma once

#include <vector>

#include "curve.hpp"
#include "matrix.hpp"

namespace qmetro {

struct LwurSpec {
    double f11 = 0.0;
    double f22 = 0.0;
    double c_tilde = 0.0;
};

LwurSpec make_lwur_spec(double f11, double f22, double c_tilde);

// gamma_1 + gamma_2 - 2 sqrt((1-c~^2)(1-gamma_1)(1-gamma_2)) - (2 - c~^2);
// feasible iff <= 0. Domain error when some gamma_j > 1 (the point already
// violates that parameter's single-parameter SLDCRB).
double lwur_slack(double v1, double v2, const LwurSpec& spec);

enum class LwbPath { closed_c1, closed_c0, numeric };

struct LwbResult {
    double value = 0.0;
    double v1 = 0.0, v2 = 0.0;
    bool boundary_active = false;  // LWUR equality binds
    bool g1_active = false;        // gamma_1 = 1 binds
    bool g2_active = false;        // gamma_2 = 1 binds
    double dual_eta = 0.0;         // multiplier of the LWUR constraint
    double kkt_residual = 0.0;
    double feas_residual = 0.0;    // |slack| at the optimizer
    LwbPath path = LwbPath::numeric;
};

LwbResult lwb(const LwurSpec& spec);

// Closed forms at the ends of the c~ range (also oracles for the numeric path).
double lwb_closed_c1(double f11, double f22);  // (1/sqrt(F11) + 1/sqrt(F22))^2
double lwb_closed_c0(double f11, double f22);  // 1/F11 + 1/F22

// Internal numeric path exposed for cross-validation against the closed
// forms at the ends of the c~ range.
LwbResult lwb_numeric(const LwurSpec& spec);

// LWUR equality locus v2(v1); past gamma_1 < 1 - c~^2 the relation imposes
// nothing beyond the single-parameter bound and the curve follows the box
// edge v2 = 1/F22.
Curve lwur_boundary_curve(const LwurSpec& spec, const std::vector<double>& v1_grid);

}  // namespace qmetro
