// Two-parameter estimation problems and their quantum-information
// descriptors: SLD operators (solved in the eigenbasis of rho), the SLD
// quantum Fisher information matrix, the RLD Fisher matrix (full-rank
// states only), and the incompatibility coefficient c~.

#pragma once

#include <optional>
#include <utility>

#include "matrix.hpp"

namespace qmetro {

struct Problem {
    cmat rho;
    cmat drho1;
    cmat drho2;
    int dim() const { return rho.d; }
};

// Validating constructor; |Tr drho_i| <= 1e-10 and Hermiticity are gated here.
Problem make_problem(cmat rho, cmat drho1, cmat drho2);

constexpr double kDefaultRankTol = 1e-10;

// SLDs from the eigenbasis of rho: (L_i)_jk = 2 (d_i rho)_jk / (lam_j + lam_k)
// on pairs with lam_j + lam_k > rank_tol, zero across the kernel. Errors if
// the derivative carries more than 1e-6 of weight on the kernel-kernel block.
std::pair<cmat, cmat> sld_operators(const Problem& p, double rank_tol = kDefaultRankTol);

// F_ij = Re Tr[rho L_i L_j], symmetrized.
r2x2 sld_qfi(const Problem& p);

// RLD Fisher matrix, elements Tr[rho L_j^R (L_i^R)^dagger] with
// L_j^R = rho^{-1} d_j rho. Requires min eig(rho) > 1e-10.
c2x2 rld_qfi(const Problem& p);

// c~ = TrAbs(sqrt(rho)[L1,L2]sqrt(rho)) / (2 sqrt(F11 F22)), clamped to 1
// when within 1e-9; values beyond the window are validation errors.
double incompatibility(const Problem& p);

// One consistent snapshot of everything the bounds consume.
struct QfiData {
    cmat l1, l2;
    r2x2 qfi;
    std::optional<c2x2> rld;  // absent for rank-deficient states
    double c_tilde = 0.0;
    double rank_tol = kDefaultRankTol;
};

QfiData qfi_data(const Problem& p, double rank_tol = kDefaultRankTol);

// det F <= 1e-14 (Tr F)^2 is the shared "treat as singular" convention.
bool qfi_singular(const r2x2& f);

}  // namespace qmetro
