// POVM statistics: outcome probabilities and derivatives, the classical
// Fisher information, the information-regret matrix R = F_q - F, the IRTR
// gap G, and the scalar precision figure of merit det F / Tr F.

#pragma once

#include <vector>

#include "matrix.hpp"
#include "model.hpp"

namespace qmetro {

struct Povm {
    std::vector<cmat> effects;
    int dim() const { return effects.empty() ? 0 : effects.front().d; }
    int outcomes() const { return static_cast<int>(effects.size()); }
};

// Validates Hermiticity, positivity (min eigenvalue >= -1e-10), and
// completeness (Frobenius distance to identity <= 1e-10). A single-effect
// POVM {I} is accepted (it carries zero information but is well formed).
Povm make_povm(std::vector<cmat> effects);

struct OutcomeStats {
    std::vector<double> p;    // clipped at 0 from above -1e-12
    std::vector<double> dp1;  // Tr[(d1 rho) Pi_k]
    std::vector<double> dp2;
};

OutcomeStats probabilities(const Problem& p, const Povm& povm);

constexpr double kDefaultPTol = 1e-12;

// Eq.-(3)-style sum over outcomes with p_k > p_tol; an outcome with
// vanishing probability but non-vanishing derivative is an error (formally
// unbounded information, no locally unbiased estimator exists there).
r2x2 classical_fisher(const Problem& p, const Povm& povm, double p_tol = kDefaultPTol);

struct RegretReport {
    r2x2 classical_fisher;
    r2x2 regret;  // quantum minus classical information
    double delta1 = 0.0, delta2 = 0.0;
    double gap = 0.0;  // IRTR slack G
    double precision = 0.0;
};

RegretReport regret_report(const Problem& p, const Povm& povm);

// det F / Tr F, with 0 for singular F (det <= 1e-14 (Tr F)^2).
double precision(const r2x2& classical_fisher);

}  // namespace qmetro
