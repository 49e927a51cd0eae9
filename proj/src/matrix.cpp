#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qmetro {

cmat operator+(const cmat& x, const cmat& y) {
    cmat r(x.d);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

cmat operator-(const cmat& x, const cmat& y) {
    cmat r(x.d);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

cmat operator*(const cmat& x, const cmat& y) {
    const int d = x.d;
    cmat r(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cx xik = x(i, k);
            if (xik == cx{}) continue;
            for (int j = 0; j < d; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

cmat operator*(cx s, const cmat& x) {
    cmat r(x.d);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
    return r;
}

cmat dagger(const cmat& x) {
    cmat r(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j) r(i, j) = std::conj(x(j, i));
    return r;
}

cx trace(const cmat& x) {
    cx t{};
    for (int i = 0; i < x.d; ++i) t += x(i, i);
    return t;
}

double frob_norm(const cmat& x) {
    double s = 0.0;
    for (const cx& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const cmat& x) {
    double s = 0.0;
    for (const cx& v : x.a) s = std::max(s, std::abs(v));
    return s;
}

double herm_defect(const cmat& x) {
    double s = 0.0;
    for (int i = 0; i < x.d; ++i)
        for (int j = i; j < x.d; ++j)
            s = std::max(s, std::abs(x(i, j) - std::conj(x(j, i))));
    return s;
}

cmat hermitize(const cmat& x) {
    cmat r(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j) r(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
    return r;
}

cmat commutator(const cmat& x, const cmat& y) { return x * y - y * x; }

void require_hermitian(const cmat& x, const char* what) {
    if (x.d <= 0) fail(errc::validation, std::string(what) + ": empty matrix");
    for (const cx& v : x.a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(errc::validation, std::string(what) + ": non-finite entry");
    const double tol = 1e-12 * (1.0 + max_abs(x));
    for (int i = 0; i < x.d; ++i) {
        for (int j = i; j < x.d; ++j) {
            const double defect = std::abs(x(i, j) - std::conj(x(j, i)));
            if (defect > tol) {
                std::ostringstream os;
                os << what << ": entry (" << i << "," << j << ") breaks Hermitian symmetry, |A_ij - conj(A_ji)| = "
                   << defect << " > " << tol << " (= 1e-12 * (1 + max|A|))";
                fail(errc::validation, os.str());
            }
        }
    }
}

void require_same_dim(const cmat& x, const cmat& y, const char* what) {
    if (x.d != y.d)
        fail(errc::dimension, std::string(what) + ": dimension mismatch (" + std::to_string(x.d) + " vs " +
                                  std::to_string(y.d) + ")");
}

namespace {

// One cyclic Jacobi sweep pass targeting pivot (p,q). a is overwritten in
// place; u accumulates the eigenvector columns when non-null.
void jacobi_rotate(cmat& a, cmat* u, int p, int q) {
    const cx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cx w = apq / r;  // phase, no trig
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cx wc = std::conj(w);

    // V = [[c, s], [-conj(w) s, conj(w) c]] on the (p,q) plane; A <- V^H A V.
    const int d = a.d;
    for (int j = 0; j < d; ++j) {  // rows p,q: V^H A
        const cx ap = a(p, j), aq = a(q, j);
        a(p, j) = c * ap - w * s * aq;
        a(q, j) = s * ap + w * c * aq;
    }
    for (int i = 0; i < d; ++i) {  // cols p,q: (V^H A) V
        const cx ap = a(i, p), aq = a(i, q);
        a(i, p) = c * ap - wc * s * aq;
        a(i, q) = s * ap + wc * c * aq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    if (u) {
        for (int i = 0; i < d; ++i) {
            const cx up = (*u)(i, p), uq = (*u)(i, q);
            (*u)(i, p) = c * up - wc * s * uq;
            (*u)(i, q) = s * up + wc * c * uq;
        }
    }
}

double offdiag_norm(const cmat& a) {
    double s = 0.0;
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem eig_hermitian(const cmat& a_in) {
    require_hermitian(a_in, "eig_hermitian input");
    const int d = a_in.d;
    cmat a = hermitize(a_in);
    cmat u = cmat::identity(d);

    const double scale = std::max(1.0, frob_norm(a));
    const double stop = 1e-15 * scale;
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (offdiag_norm(a) <= stop) break;
        const double thresh = 1e-300;
        for (int p = 0; p < d - 1; ++p)
            for (int q = p + 1; q < d; ++q)
                if (std::abs(a(p, q)) > thresh) jacobi_rotate(a, &u, p, q);
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.values.resize(d);
    es.vectors = cmat(d);
    for (int k = 0; k < d; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < d; ++i) es.vectors(i, k) = u(i, order[k]);
    }
    return es;
}

cmat psd_sqrt(const cmat& a) {
    EigenSystem es = eig_hermitian(a);
    const int d = a.d;
    for (double& lam : es.values) {
        if (lam < -1e-10) {
            std::ostringstream os;
            os << "psd_sqrt: eigenvalue " << lam << " below the -1e-10 clipping floor (matrix not PSD)";
            fail(errc::not_psd, os.str());
        }
        lam = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    cmat r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            cx s{};
            for (int k = 0; k < d; ++k) s += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
            r(i, j) = s;
        }
    return hermitize(r);
}

double trabs_hermitian(const cmat& a) {
    EigenSystem es = eig_hermitian(a);
    double s = 0.0;
    for (double lam : es.values) s += std::abs(lam);
    return s;
}

double trabs_rho_commutator(const cmat& rho, const cmat& x1, const cmat& x2) {
    require_density(rho, "trabs_rho_commutator rho");
    require_hermitian(x1, "trabs_rho_commutator X1");
    require_hermitian(x2, "trabs_rho_commutator X2");
    require_same_dim(rho, x1, "trabs_rho_commutator");
    require_same_dim(rho, x2, "trabs_rho_commutator");

    // Canonical argument order: swapping X1/X2 flips the sign of the
    // commutator, so pick a fixed order and the result is bit-identical
    // under swap.
    const cmat* xa = &x1;
    const cmat* xb = &x2;
    for (size_t i = 0; i < x1.a.size(); ++i) {
        const cx u = x1.a[i], v = x2.a[i];
        if (u.real() != v.real()) {
            if (u.real() > v.real()) std::swap(xa, xb);
            break;
        }
        if (u.imag() != v.imag()) {
            if (u.imag() > v.imag()) std::swap(xa, xb);
            break;
        }
    }

    const cmat s = psd_sqrt(rho);
    const cmat k = commutator(*xa, *xb);
    const cmat h = hermitize(cx(0.0, 1.0) * (s * k * s));
    return trabs_hermitian(h);
}

void require_density(const cmat& rho, const char* what) {
    require_hermitian(rho, what);
    const double tr = trace(rho).real();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream os;
        os << what << ": trace " << tr << " differs from 1 by more than 1e-10";
        fail(errc::validation, os.str());
    }
    EigenSystem es = eig_hermitian(rho);
    if (es.values.front() < -1e-10) {
        std::ostringstream os;
        os << what << ": min eigenvalue " << es.values.front() << " below -1e-10 (not a state)";
        fail(errc::validation, os.str());
    }
}

r2x2 inv2(const r2x2& f) {
    const double det = f.det();
    r2x2 r;
    r.m[0][0] = f.m[1][1] / det;
    r.m[1][1] = f.m[0][0] / det;
    r.m[0][1] = -f.m[0][1] / det;
    r.m[1][0] = -f.m[1][0] / det;
    return r;
}

c2x2 inv2c(const c2x2& f) {
    const cx det = f.m[0][0] * f.m[1][1] - f.m[0][1] * f.m[1][0];
    c2x2 r;
    r.m[0][0] = f.m[1][1] / det;
    r.m[1][1] = f.m[0][0] / det;
    r.m[0][1] = -f.m[0][1] / det;
    r.m[1][0] = -f.m[1][0] / det;
    return r;
}

void eig2_sym(const r2x2& f, double out[2]) {
    const double mean = 0.5 * (f.m[0][0] + f.m[1][1]);
    const double diff = 0.5 * (f.m[0][0] - f.m[1][1]);
    const double rad = std::sqrt(diff * diff + f.m[0][1] * f.m[1][0]);
    out[0] = mean - rad;
    out[1] = mean + rad;
}

}  // namespace qmetro
