// Scalar Cramer-Rao-type bounds (SLDCRB, NCRB, HCRB) under a 2x2 weight
// matrix, the variational general-dimension solvers behind the NCRB/HCRB,
// and the conversion of weighted bounds into MSE trade-off curves.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace qmetro {

struct Weight {
    double w11 = 1.0, w12 = 0.0, w22 = 1.0;
    double tr() const { return w11 + w22; }
    double det() const { return w11 * w22 - w12 * w12; }
};

Weight make_weight(double w11, double w12, double w22);  // positive definite or validation error
Weight scalar_weight(double w);                          // diag(w, 2-w) with 0 < w < 2

// Tr[W F^-1]; +inf when det F <= 1e-14 (Tr F)^2.
double sld_crb(const r2x2& qfi, const Weight& w);

// Qubit analytic form Tr[W F^-1] + 2 sqrt(det[W F^-1]); +inf on singular F.
double ncrb_qubit(const r2x2& qfi, const Weight& w);

// Qubit closed form through the RLD information matrix:
// Tr[W Re FR^-1] + 2 sqrt(det W) |(Im FR^-1)_12|. Needs full-rank rho;
// +inf when the SLD QFI is singular (checked before the RLD).
double hcrb_qubit(const Problem& p, const Weight& w);

struct SolverOptions {
    int max_iterations = 2000;  // per smoothing stage
    double mu_initial = 1e-2;
    double mu_final = 1e-8;
    double mu_shrink = 0.1;
    double rel_tol = 1e-9;  // relative objective change
    int tol_streak = 5;     // consecutive small changes to declare convergence
    int memory = 10;
};

struct BoundResult {
    double value = 0.0;
    bool infinite = false;
    bool has_optimizer = false;
    cmat x1, x2;  // optimizing observables when has_optimizer
    int iterations = 0;
    double final_mu = 0.0;
    double constraint_residual = 0.0;
    int history_len = 0;
    bool converged = false;
};

// Minimize Tr[W Z] + sqrt(det W) TrAbs(sqrt(rho)[X1,X2]sqrt(rho)) over
// locally unbiased Hermitian pairs. Singular QFI short-circuits to +inf.
BoundResult ncrb_general(const Problem& p, const Weight& w, const SolverOptions& opt = {});

// Same chart, objective Tr[W Z] + 2 sqrt(det W) |Im Z_12|.
BoundResult hcrb_general(const Problem& p, const Weight& w, const SolverOptions& opt = {});

// Qubit attainability hyperbola (v1 - a)(v2 - b) = ab - c^2, [a c; c b] the
// inverse QFI. Grid values must sit strictly right of the v1 asymptote.
Curve nagaoka_curve_qubit(const r2x2& qfi, const std::vector<double>& v1_grid);

// Upper envelope of the half-planes w v1 + (2-w) v2 >= C(diag(w, 2-w)):
// vertices of consecutive boundary lines, nearly parallel pairs merged,
// +inf segments dropped and flagged.
Curve envelope_from_weighted_bound(const std::function<double(const Weight&)>& bound,
                                   const std::vector<double>& w_grid, const std::string& descriptor);

// Log-uniform grid in lambda = sqrt((2-w)/w), mapped back to w and sorted
// increasing; spreads tangent directions evenly along the envelope.
std::vector<double> default_envelope_weights(int n, double lambda_min, double lambda_max);

}  // namespace qmetro
