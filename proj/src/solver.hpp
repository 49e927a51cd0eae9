// Shared machinery for the variational bound solvers: real coordinates for
// Hermitian matrices, the affine chart of locally unbiased observable pairs,
// and a compact L-BFGS with Armijo backtracking.

#pragma once

#include <functional>
#include <vector>

#include "matrix.hpp"
#include "model.hpp"

namespace qmetro {

// Orthonormal basis of d x d Hermitian matrices under <A,B> = Tr[AB]:
// the diagonal units, then (E_jk + E_kj)/sqrt(2) and i(E_jk - E_kj)/sqrt(2)
// for each j < k. pack returns the d*d real coordinates; unpack inverts.
std::vector<double> pack_hermitian(const cmat& g);
cmat unpack_hermitian(int d, const std::vector<double>& x);

// Affine chart of the locally unbiased pairs: X_i = unpack(part_i + basis u),
// u free in R^nfree. Rows of the constraint matrix are the coordinates of
// rho, drho1, drho2; throws infeasible when they are linearly dependent.
struct UnbiasedChart {
    int d = 0;
    int n = 0;      // ambient coordinates, d*d
    int nfree = 0;  // n - 3
    std::vector<double> basis;  // n x nfree row-major, orthonormal columns
    std::vector<double> part1;  // least-norm feasible point for X1
    std::vector<double> part2;  // least-norm feasible point for X2
};

UnbiasedChart unbiased_chart(const Problem& p);

// Largest violation among the six local-unbiasedness conditions.
double unbiased_residual(const Problem& p, const cmat& x1, const cmat& x2);

struct LbfgsOptions {
    int memory = 10;
    int max_iters = 2000;
    double armijo_c1 = 1e-4;
    double rel_tol = 1e-9;  // relative objective change per iteration
    int tol_streak = 5;     // consecutive small changes required
};

struct LbfgsReport {
    int iterations = 0;
    bool converged = false;
    double value = 0.0;
    double grad_norm = 0.0;
};

// fn fills the gradient and returns the objective at x.
using ObjectiveFn = std::function<double(const std::vector<double>&, std::vector<double>&)>;

LbfgsReport lbfgs_minimize(std::vector<double>& x, const ObjectiveFn& fn, const LbfgsOptions& opt);

}  // namespace qmetro
