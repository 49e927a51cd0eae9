#include "model.hpp"

#include <cmath>
#include <sstream>

namespace qmetro {

Problem make_problem(cmat rho, cmat drho1, cmat drho2) {
    require_density(rho, "rho");
    require_hermitian(drho1, "drho1");
    require_hermitian(drho2, "drho2");
    require_same_dim(rho, drho1, "drho1");
    require_same_dim(rho, drho2, "drho2");
    const cmat* ds[2] = {&drho1, &drho2};
    for (int i = 0; i < 2; ++i) {
        const double tr = std::abs(trace(*ds[i]));
        if (tr > 1e-10) {
            std::ostringstream os;
            os << "drho" << (i + 1) << ": |trace| = " << tr << " exceeds 1e-10 (derivative must preserve trace)";
            fail(errc::validation, os.str());
        }
    }
    return Problem{std::move(rho), std::move(drho1), std::move(drho2)};
}

namespace {

// U^dagger M U for eigenvector matrix U.
cmat to_eigenbasis(const cmat& u, const cmat& m) { return dagger(u) * (m * u); }

cmat from_eigenbasis(const cmat& u, const cmat& m) { return u * (m * dagger(u)); }

cmat sld_single(const EigenSystem& es, const cmat& u, const cmat& drho, double rank_tol, int which) {
    const int d = u.d;
    const cmat dt = to_eigenbasis(u, drho);
    cmat lt(d);
    double kernel_weight = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double denom = es.values[j] + es.values[k];
            if (denom > rank_tol) {
                lt(j, k) = 2.0 * dt(j, k) / denom;
            } else {
                kernel_weight += std::norm(dt(j, k));
            }
        }
    }
    if (std::sqrt(kernel_weight) > 1e-6) {
        std::ostringstream os;
        os << "sld_operators: drho" << which << " has weight " << std::sqrt(kernel_weight)
           << " on the kernel of rho (> 1e-6), no SLD reproduces it";
        fail(errc::unsupported_derivative, os.str());
    }
    return hermitize(from_eigenbasis(u, lt));
}

}  // namespace

std::pair<cmat, cmat> sld_operators(const Problem& p, double rank_tol) {
    if (rank_tol <= 0.0) fail(errc::bad_argument, "sld_operators: rank_tol must be positive");
    EigenSystem es = eig_hermitian(p.rho);
    return {sld_single(es, es.vectors, p.drho1, rank_tol, 1), sld_single(es, es.vectors, p.drho2, rank_tol, 2)};
}

namespace {

r2x2 qfi_from_slds(const Problem& p, const cmat& l1, const cmat& l2) {
    const cmat rl1 = p.rho * l1;
    const cmat rl2 = p.rho * l2;
    auto re_tr_prod = [](const cmat& a, const cmat& b) {
        // Re Tr[a b] without forming the product
        double s = 0.0;
        for (int i = 0; i < a.d; ++i)
            for (int j = 0; j < a.d; ++j) s += (a(i, j) * b(j, i)).real();
        return s;
    };
    r2x2 f;
    f.m[0][0] = re_tr_prod(rl1, l1);
    f.m[1][1] = re_tr_prod(rl2, l2);
    const double f12 = 0.5 * (re_tr_prod(rl1, l2) + re_tr_prod(rl2, l1));
    f.m[0][1] = f12;
    f.m[1][0] = f12;
    double ev[2];
    eig2_sym(f, ev);
    if (ev[0] < -1e-9) {
        std::ostringstream os;
        os << "sld_qfi: QFI min eigenvalue " << ev[0] << " below -1e-9";
        fail(errc::validation, os.str());
    }
    return f;
}

double c_tilde_from(const Problem& p, const cmat& l1, const cmat& l2, const r2x2& f) {
    if (f.m[0][0] <= 0.0 || f.m[1][1] <= 0.0)
        fail(errc::validation, "incompatibility: a diagonal QFI entry vanishes, c~ undefined");
    const double raw = trabs_rho_commutator(p.rho, l1, l2) / (2.0 * std::sqrt(f.m[0][0] * f.m[1][1]));
    if (raw > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "incompatibility: c~ = " << raw << " exceeds 1 beyond the 1e-9 clamping window";
        fail(errc::validation, os.str());
    }
    return raw > 1.0 ? 1.0 : raw;
}

}  // namespace

r2x2 sld_qfi(const Problem& p) {
    auto [l1, l2] = sld_operators(p);
    return qfi_from_slds(p, l1, l2);
}

c2x2 rld_qfi(const Problem& p) {
    EigenSystem es = eig_hermitian(p.rho);
    if (es.values.front() <= 1e-10) {
        std::ostringstream os;
        os << "rld_qfi: rho has min eigenvalue " << es.values.front()
           << " <= 1e-10, the RLD is undefined for rank-deficient states";
        fail(errc::rank_deficient, os.str());
    }
    const int d = p.dim();
    cmat rho_inv(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            cx s{};
            for (int k = 0; k < d; ++k) s += es.vectors(i, k) * (1.0 / es.values[k]) * std::conj(es.vectors(j, k));
            rho_inv(i, j) = s;
        }
    const cmat lr1 = rho_inv * p.drho1;
    const cmat lr2 = rho_inv * p.drho2;
    const cmat* lr[2] = {&lr1, &lr2};
    c2x2 fr;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // Tr[rho L_j^R (L_i^R)^dagger]
            const cmat t = p.rho * (*lr[j] * dagger(*lr[i]));
            fr.m[i][j] = trace(t);
        }
    // Hermitian up to rounding; make it exact.
    fr.m[0][0] = fr.m[0][0].real();
    fr.m[1][1] = fr.m[1][1].real();
    const cx off = 0.5 * (fr.m[0][1] + std::conj(fr.m[1][0]));
    fr.m[0][1] = off;
    fr.m[1][0] = std::conj(off);
    return fr;
}

double incompatibility(const Problem& p) {
    auto [l1, l2] = sld_operators(p);
    const r2x2 f = qfi_from_slds(p, l1, l2);
    return c_tilde_from(p, l1, l2, f);
}

QfiData qfi_data(const Problem& p, double rank_tol) {
    QfiData q;
    q.rank_tol = rank_tol;
    auto slds = sld_operators(p, rank_tol);
    q.l1 = std::move(slds.first);
    q.l2 = std::move(slds.second);
    q.qfi = qfi_from_slds(p, q.l1, q.l2);
    q.c_tilde = c_tilde_from(p, q.l1, q.l2, q.qfi);
    EigenSystem es = eig_hermitian(p.rho);
    if (es.values.front() > 1e-10) q.rld = rld_qfi(p);
    return q;
}

bool qfi_singular(const r2x2& f) {
    const double tr = f.tr();
    return f.det() <= 1e-14 * tr * tr;
}

}  // namespace qmetro
