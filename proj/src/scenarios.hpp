// Worked scenarios with closed-form references: the qubit rotation-sensing
// family (state (I + r n.sigma)/2 with direction angles theta, phi, sensing
// rotations about x and y), and the corner-coupled diagonal family in which
// the Nagaoka and Lu-Wang bounds coincide at 12(2d - 1).

#pragma once

#include <utility>

#include "bounds.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace qmetro {

struct RotationsConfig {
    double r = 0.5;  // Bloch length, 0 < r <= 1
    double theta = 0.0;
    double phi = 0.0;
};

// rho = (I + r n.sigma)/2, n = (sin t cos p, sin t sin p, cos t), with
// derivatives d_x rho = (i/2)[rho, sigma_x] and d_y rho = (i/2)[rho, sigma_y].
Problem rotations_problem(const RotationsConfig& cfg);

struct ReferenceValues {
    r2x2 qfi{};
    double c_tilde = 0.0;
    double ncrb = 0.0;
    double hcrb = 0.0;
    double lwb = 0.0;
    bool ncrb_infinite = false;  // theta = pi/2: QFI is singular
    bool hcrb_infinite = false;
    bool has_hcrb = false;  // the closed form is derived for r < 1
    bool has_lwb = false;   // closed form known at theta=phi=pi/4 and theta=pi/2
};

// Identity-weight closed forms for the rotation-sensing family.
ReferenceValues rotations_reference(const RotationsConfig& cfg);

// Diagonal state with d-1 entries 1/(d - 1/2), derivatives generated by the
// corner operators E_{1d} + E_{d1} and -i E_{1d} + i E_{d1}. Both the
// Nagaoka and Lu-Wang bounds equal 12(2d - 1) at identity weight.
std::pair<Problem, double> equal_bounds_problem(int d);

}  // namespace qmetro
