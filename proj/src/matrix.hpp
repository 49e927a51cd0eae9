// Dense complex matrix kernel for small Hermitian problems (d <= ~32).
// Everything downstream (SLDs, bounds, POVM statistics) runs through the
// eigendecomposition implemented here, so this file is deliberately
// dependency-free: cyclic Jacobi with a trig-free complex phase.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmetro {

using cx = std::complex<double>;

enum class errc {
    validation,
    dimension,
    not_psd,
    singular,
    rank_deficient,
    unsupported_derivative,
    infeasible,
    no_convergence,
    domain,
    generation,
    bad_argument,
    internal,
};

class qm_error : public std::runtime_error {
public:
    qm_error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
    errc code;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw qm_error(c, msg); }

// Row-major dense complex matrix.
struct cmat {
    int d = 0;
    std::vector<cx> a;

    cmat() = default;
    explicit cmat(int dim) : d(dim), a(static_cast<size_t>(dim) * dim) {}

    cx& operator()(int i, int j) { return a[static_cast<size_t>(i) * d + j]; }
    const cx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * d + j]; }

    static cmat identity(int dim) {
        cmat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static cmat zero(int dim) { return cmat(dim); }
};

cmat operator+(const cmat& x, const cmat& y);
cmat operator-(const cmat& x, const cmat& y);
cmat operator*(const cmat& x, const cmat& y);
cmat operator*(cx s, const cmat& x);
cmat dagger(const cmat& x);

cx trace(const cmat& x);
double frob_norm(const cmat& x);
double max_abs(const cmat& x);
double herm_defect(const cmat& x);      // max |a_ij - conj(a_ji)|
cmat hermitize(const cmat& x);          // (x + x^dagger)/2
cmat commutator(const cmat& x, const cmat& y);

// Hermiticity gate used by every operation taking a HermitianMatrix:
// max-entry defect must stay below 1e-12 * (1 + max|A|).
void require_hermitian(const cmat& x, const char* what);
void require_same_dim(const cmat& x, const cmat& y, const char* what);

struct EigenSystem {
    std::vector<double> values;  // ascending
    cmat vectors;                // column k <-> values[k]
};

// Cyclic Jacobi for complex Hermitian matrices. The off-diagonal pivot
// a_pq is rotated away with the composite of a phase diag(1, conj(w))
// (w = a_pq/|a_pq|, no trig) and a real 2x2 rotation.
EigenSystem eig_hermitian(const cmat& a);

// Square root of a PSD matrix; eigenvalues in [-1e-10, 0) are treated as
// rounding noise and clipped, anything lower is an error.
cmat psd_sqrt(const cmat& a);

// Sum of |eigenvalues|.
double trabs_hermitian(const cmat& a);

// TrAbs(rho [X1, X2]) computed through the Hermitianization
// i sqrt(rho) [X1, X2] sqrt(rho). Exactly symmetric under swapping X1/X2:
// the arguments are put in a canonical order first (the commutator only
// changes sign, which |eigenvalues| ignore).
double trabs_rho_commutator(const cmat& rho, const cmat& x1, const cmat& x2);

// Density-matrix gate: Hermitian, trace 1 within 1e-10, min eig >= -1e-10.
void require_density(const cmat& rho, const char* what);

// ---- tiny fixed-size helpers (2x2 blocks show up everywhere) ----

struct r2x2 {
    double m[2][2]{};
    double tr() const { return m[0][0] + m[1][1]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

struct c2x2 {
    cx m[2][2]{};
};

// Inverse of a symmetric positive-(semi)definite 2x2; callers handle the
// singular case through the det <= 1e-14 (tr)^2 convention themselves.
r2x2 inv2(const r2x2& f);
c2x2 inv2c(const c2x2& f);

// Eigenvalues of a real symmetric 2x2, ascending.
void eig2_sym(const r2x2& f, double out[2]);

}  // namespace qmetro
