#include "measurement.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qmetro {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kCompleteTol = 1e-10;

double re_trace_prod(const cmat& a, const cmat& b) {
    // Re Tr[A B] for Hermitian A, B without forming the product.
    double s = 0.0;
    const int d = a.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += (a(i, j) * b(j, i)).real();
    return s;
}

}  // namespace

Povm make_povm(std::vector<cmat> effects) {
    if (effects.empty()) fail(errc::validation, "POVM needs at least one effect");
    const int d = effects.front().d;
    cmat sum = cmat::zero(d);
    for (std::size_t k = 0; k < effects.size(); ++k) {
        const cmat& e = effects[k];
        if (e.d != d) fail(errc::dimension, "POVM effects have mixed dimensions");
        require_hermitian(e, "POVM effect");
        EigenSystem es = eig_hermitian(e);
        if (es.values.front() < -kPsdTol)
            fail(errc::not_psd, "POVM effect " + std::to_string(k) +
                                    " has eigenvalue " + std::to_string(es.values.front()));
        sum = sum + e;
    }
    for (int i = 0; i < d; ++i) sum(i, i) -= 1.0;
    if (frob_norm(sum) > kCompleteTol)
        fail(errc::validation, "POVM effects do not sum to the identity");
    Povm povm;
    povm.effects = std::move(effects);
    return povm;
}

OutcomeStats probabilities(const Problem& prob, const Povm& povm) {
    if (povm.dim() != prob.dim()) fail(errc::dimension, "POVM dimension mismatch");
    OutcomeStats st;
    const int m = povm.outcomes();
    st.p.resize(m);
    st.dp1.resize(m);
    st.dp2.resize(m);
    for (int k = 0; k < m; ++k) {
        double pk = re_trace_prod(prob.rho, povm.effects[k]);
        if (pk < -1e-12)
            fail(errc::validation, "outcome probability " + std::to_string(pk) +
                                       " below tolerance at index " + std::to_string(k));
        st.p[k] = pk < 0.0 ? 0.0 : pk;
        st.dp1[k] = re_trace_prod(prob.drho1, povm.effects[k]);
        st.dp2[k] = re_trace_prod(prob.drho2, povm.effects[k]);
    }
    return st;
}

r2x2 classical_fisher(const Problem& prob, const Povm& povm, double p_tol) {
    if (p_tol <= 0.0) fail(errc::bad_argument, "p_tol must be positive");
    OutcomeStats st = probabilities(prob, povm);
    const double dp_tol = std::sqrt(p_tol);
    r2x2 f{};
    for (int k = 0; k < povm.outcomes(); ++k) {
        if (st.p[k] <= p_tol) {
            if (std::abs(st.dp1[k]) > dp_tol || std::abs(st.dp2[k]) > dp_tol)
                fail(errc::domain,
                     "outcome " + std::to_string(k) +
                         " has vanishing probability but non-vanishing derivative; "
                         "the classical Fisher information diverges");
            continue;
        }
        f.m[0][0] += st.dp1[k] * st.dp1[k] / st.p[k];
        f.m[0][1] += st.dp1[k] * st.dp2[k] / st.p[k];
        f.m[1][1] += st.dp2[k] * st.dp2[k] / st.p[k];
    }
    f.m[1][0] = f.m[0][1];
    return f;
}

double precision(const r2x2& f) {
    const double tr = f.tr();
    const double det = f.det();
    if (det <= 1e-14 * tr * tr) return 0.0;
    return det / tr;
}

RegretReport regret_report(const Problem& prob, const Povm& povm) {
    RegretReport rep;
    rep.classical_fisher = classical_fisher(prob, povm);
    const r2x2 fq = sld_qfi(prob);
    if (fq.m[0][0] <= 0.0 || fq.m[1][1] <= 0.0)
        fail(errc::singular, "quantum Fisher information has a vanishing diagonal");
    const double ct = incompatibility(prob);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            rep.regret.m[i][j] = fq.m[i][j] - rep.classical_fisher.m[i][j];
    rep.delta1 = std::sqrt(std::max(rep.regret.m[0][0], 0.0) / fq.m[0][0]);
    rep.delta2 = std::sqrt(std::max(rep.regret.m[1][1], 0.0) / fq.m[1][1]);
    const double cross = std::sqrt(std::max(1.0 - ct * ct, 0.0));
    rep.gap = rep.delta1 * rep.delta1 + rep.delta2 * rep.delta2 +
              2.0 * cross * rep.delta1 * rep.delta2 - ct * ct;
    rep.precision = precision(rep.classical_fisher);
    return rep;
}

}  // namespace qmetro
