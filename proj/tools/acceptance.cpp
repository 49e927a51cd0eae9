// Acceptance suite for the library, exercised through the C API. Each
// criterion prints one PASS/FAIL line with wall-clock timing and a short
// metric summary; known-unattainable clauses run verbatim and report
// honestly rather than being skipped.

#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qmetro/qmetro.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ProbDel {
    void operator()(qm_problem* p) const { qm_problem_free(p); }
};
struct PovmDel {
    void operator()(qm_povm* m) const { qm_povm_free(m); }
};
struct RngDel {
    void operator()(qm_rng* r) const { qm_rng_free(r); }
};
using Prob = std::unique_ptr<qm_problem, ProbDel>;
using Povm = std::unique_ptr<qm_povm, PovmDel>;
using Rand = std::unique_ptr<qm_rng, RngDel>;

Prob rotations(double r, double th, double ph, std::string& msg) {
    qm_problem* p = nullptr;
    if (qm_problem_rotations(r, th, ph, &p) != QM_OK)
        msg = std::string("rotations: ") + qm_last_error();
    return Prob(p);
}

Rand make_rng(uint64_t seed, uint64_t stream) {
    qm_rng* r = nullptr;
    qm_rng_create(seed, stream, &r);
    return Rand(r);
}

double uniform(const Rand& r) {
    double u = 0.0;
    qm_rng_uniform(r.get(), &u);
    return u;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string eng(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// closed-form references for the rotation scenario
double ref_ncrb(double r, double th) {
    double s = std::abs(1.0 / std::cos(th));
    return (1.0 + s) * (1.0 + s) / (r * r);
}
double ref_hcrb(double r, double th) {
    double s = std::abs(1.0 / std::cos(th));
    return (1.0 + 2.0 * r * s + s * s) / (r * r);
}
double ref_ctilde(double th, double ph) {
    double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th);
    double cp2 = std::cos(ph) * std::cos(ph), sp2 = std::sin(ph) * std::sin(ph);
    return std::abs(std::cos(th)) / std::sqrt((c2 + cp2 * s2) * (c2 + sp2 * s2));
}

#define ACC_CHECK(call, what)                                     \
    do {                                                          \
        if ((call) != QM_OK) {                                    \
            msg = std::string(what) + ": " + qm_last_error();     \
            return false;                                         \
        }                                                         \
    } while (0)

// 1. rotation closed forms vs the variational solvers over a 36-point grid
bool crit1(std::string& msg) {
    const double rs[] = {0.3, 0.5, 0.8, 1.0};
    const double ths[] = {kPi / 6, kPi / 4, kPi / 3};
    const double phs[] = {0.0, kPi / 8, kPi / 4};
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_n = 0, worst_h = 0, worst_c = 0;
    for (double r : rs)
        for (double th : ths)
            for (double ph : phs) {
                Prob p = rotations(r, th, ph, msg);
                if (!p) return false;
                qm_bound_result nres{};
                ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
                worst_n = std::max(worst_n, rel(nres.value, ref_ncrb(r, th)));
                if (r < 1.0) {
                    qm_bound_result hres{};
                    ACC_CHECK(qm_hcrb_general(p.get(), &wi, nullptr, &hres), "hcrb_general");
                    worst_h = std::max(worst_h, rel(hres.value, ref_hcrb(r, th)));
                }
                double ct = 0;
                ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
                worst_c = std::max(worst_c, std::abs(ct - ref_ctilde(th, ph)));
            }
    msg = "36-point grid, max err: ncrb rel " + eng(worst_n) + ", hcrb rel " + eng(worst_h) +
          ", c~ abs " + eng(worst_c);
    return worst_n <= 1e-5 && worst_h <= 1e-5 && worst_c <= 1e-9;
}

// 2. finite-gap example: numeric lwb = 4/r^2 and the r=1/2 golden quadruple
bool crit2(std::string& msg) {
    double worst_lwb = 0, worst_kkt = 0;
    for (double r : {0.25, 0.5, 1.0}) {
        Prob p = rotations(r, kPi / 4, kPi / 4, msg);
        if (!p) return false;
        double qfi[4], ct = 0;
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
        qm_lwb_result lres{};
        ACC_CHECK(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
        if (lres.path != 2) {
            msg = "lwb took a closed path where the numeric one was expected";
            return false;
        }
        worst_lwb = std::max(worst_lwb, rel(lres.value, 4.0 / (r * r)));
        worst_kkt = std::max(worst_kkt, lres.kkt_residual);
    }

    Prob p = rotations(0.5, kPi / 4, kPi / 4, msg);
    if (!p) return false;
    qm_weight wi = qm_weight_scalar(1.0);
    double sld = 0, qfi[4], ct = 0;
    ACC_CHECK(qm_sld_crb(p.get(), &wi, &sld), "sld_crb");
    ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
    ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
    qm_bound_result nres{}, hres{};
    ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
    ACC_CHECK(qm_hcrb_general(p.get(), &wi, nullptr, &hres), "hcrb_general");
    qm_lwb_result lres{};
    ACC_CHECK(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
    double e_sld = rel(sld, 12.0);
    double e_n = rel(nres.value, 12.0 + 8.0 * std::sqrt(2.0));
    double e_h = rel(hres.value, 12.0 + 4.0 * std::sqrt(2.0));
    double e_l = rel(lres.value, 16.0);
    double worst_q = std::max(std::max(e_sld, e_n), std::max(e_h, e_l));
    msg = "lwb vs 4/r^2 rel " + eng(worst_lwb) + " (kkt " + eng(worst_kkt) +
          "), golden quadruple rel " + eng(worst_q);
    return worst_lwb <= 1e-8 && worst_kkt <= 1e-9 && worst_q <= 1e-6;
}

// 3. infinite-gap example at theta = pi/2
bool crit3(std::string& msg) {
    const double cases[3][2] = {{1.0, kPi / 4}, {1.0, kPi / 3}, {0.5, kPi / 6}};
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_lwb = 0;
    for (auto& c : cases) {
        double r = c[0], ph = c[1];
        Prob p = rotations(r, kPi / 2, ph, msg);
        if (!p) return false;
        double sld = 0;
        ACC_CHECK(qm_sld_crb(p.get(), &wi, &sld), "sld_crb");
        qm_bound_result nres{}, hres{};
        ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
        ACC_CHECK(qm_hcrb_general(p.get(), &wi, nullptr, &hres), "hcrb_general");
        if (!std::isinf(sld) || !nres.infinite || !std::isinf(nres.value) ||
            !hres.infinite || !std::isinf(hres.value)) {
            msg = "a bound stayed finite on a singular-QFI problem";
            return false;
        }
        double qfi[4], ct = 0;
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
        qm_lwb_result lres{};
        ACC_CHECK(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
        double sp = std::sin(ph), cp = std::cos(ph);
        double ref = 1.0 / (r * r * sp * sp) + 1.0 / (r * r * cp * cp);
        worst_lwb = std::max(worst_lwb, rel(lres.value, ref));
    }
    msg = "sld/ncrb/hcrb all +inf; lwb vs closed form rel " + eng(worst_lwb);
    return worst_lwb <= 1e-8;
}

// 4. diagonal-QFI reparameterizations collapse the NCRB onto the LWB
bool crit4(std::string& msg) {
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_ct = 0, worst_gap = 0;
    for (int i = 0; i < 100; ++i) {
        Rand rng = make_rng(4204, i);
        qm_problem* raw = nullptr;
        ACC_CHECK(qm_random_problem(2, rng.get(), &raw), "random_problem");
        Prob p(raw);
        double qfi[4];
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        double t = 0.5 * std::atan2(2.0 * qfi[1], qfi[0] - qfi[3]);
        double ctr = std::cos(t), str = std::sin(t);
        double rho[8], d1[8], d2[8], e1[8], e2[8];
        ACC_CHECK(qm_problem_matrices(p.get(), rho, d1, d2), "matrices");
        for (int k = 0; k < 8; ++k) {
            e1[k] = ctr * d1[k] + str * d2[k];
            e2[k] = -str * d1[k] + ctr * d2[k];
        }
        qm_problem* rawq = nullptr;
        ACC_CHECK(qm_problem_create(2, rho, e1, e2, &rawq), "problem_create");
        Prob q(rawq);
        double ct = 0, ncrb = 0;
        ACC_CHECK(qm_incompatibility(q.get(), &ct), "incompatibility");
        ACC_CHECK(qm_ncrb_qubit(q.get(), &wi, &ncrb), "ncrb_qubit");
        double f[4];
        ACC_CHECK(qm_sld_qfi(q.get(), f), "sld_qfi");
        qm_lwb_result lres{};
        ACC_CHECK(qm_lwb(f[0], f[3], ct, &lres), "lwb");
        worst_ct = std::max(worst_ct, std::abs(ct - 1.0));
        worst_gap = std::max(worst_gap, std::abs(ncrb - lres.value) / ncrb);
    }
    msg = "100 reparameterized qubits: |c~-1| " + eng(worst_ct) + ", |ncrb-lwb|/ncrb " +
          eng(worst_gap);
    return worst_ct <= 1e-9 && worst_gap <= 1e-8;
}

// 5. corner-coupled diagonal family: ncrb = lwb = 12(2d-1) for d = 2..5
bool crit5(std::string& msg) {
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_n = 0, worst_l = 0, worst_ct = 0;
    for (int d = 2; d <= 5; ++d) {
        double expected = 0;
        qm_problem* raw = nullptr;
        ACC_CHECK(qm_problem_equal_bounds(d, &expected, &raw), "equal_bounds");
        Prob p(raw);
        qm_bound_result nres{};
        ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
        double qfi[4], ct = 0;
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
        qm_lwb_result lres{};
        ACC_CHECK(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
        worst_n = std::max(worst_n, rel(nres.value, expected));
        worst_l = std::max(worst_l, rel(lres.value, expected));
        worst_ct = std::max(worst_ct, std::abs(ct - 1.0));
    }
    msg = "d=2..5 vs 12(2d-1): ncrb rel " + eng(worst_n) + ", lwb rel " + eng(worst_l) +
          ", |c~-1| " + eng(worst_ct);
    return worst_n <= 1e-4 && worst_l <= 1e-4 && worst_ct <= 1e-9;
}

// 6. random ensembles, d in {2,3}: lwb <= ncrb everywhere, and the gap is
// supposed to close once c~ > 0.999. The second clause cannot hold at this
// tolerance (the normalized gap approaches sqrt(1-c~^2), which admits values
// up to ~4.5e-2 above the 0.999 cut), so it is expected to fail; it runs
// verbatim and reports the measured edge.
bool crit6(std::string& msg) {
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_order = -1e300;  // max of lwb/ncrb - 1
    int near1 = 0, gap_bad = 0;
    double worst_gap_near1 = 0;
    for (int d = 2; d <= 3; ++d) {
        for (int i = 0; i < 1000; ++i) {
            Rand rng = make_rng(4206, (d == 2 ? 0 : 100000) + i);
            qm_problem* raw = nullptr;
            ACC_CHECK(qm_random_problem(d, rng.get(), &raw), "random_problem");
            Prob p(raw);
            double ncrb = 0;
            if (d == 2) {
                ACC_CHECK(qm_ncrb_qubit(p.get(), &wi, &ncrb), "ncrb_qubit");
            } else {
                qm_bound_result nres{};
                ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
                if (!nres.converged) {
                    msg = "ncrb_general failed to converge";
                    return false;
                }
                ncrb = nres.value;
            }
            double qfi[4], ct = 0;
            ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
            ACC_CHECK(qm_incompatibility(p.get(), &ct), "incompatibility");
            qm_lwb_result lres{};
            ACC_CHECK(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
            worst_order = std::max(worst_order, lres.value / ncrb - 1.0);
            if (ct > 0.999) {
                ++near1;
                double gap = (ncrb - lres.value) / ncrb;
                worst_gap_near1 = std::max(worst_gap_near1, gap);
                if (gap > 1e-2) ++gap_bad;
            }
        }
    }
    bool order_ok = worst_order <= 1e-7;
    bool gap_ok = gap_bad == 0;
    std::ostringstream os;
    os << "2000 draws: max lwb/ncrb-1 = " << eng(worst_order) << " (clause 1 "
       << (order_ok ? "ok" : "VIOLATED") << "); c~>0.999 on " << near1 << " draws, gap>1e-2 on "
       << gap_bad << " of them (max " << eng(worst_gap_near1) << ")";
    if (!gap_ok)
        os << " -- the near-c~=1 gap scales like sqrt(1-c~^2), so this clause cannot meet 1e-2";
    msg = os.str();
    return order_ok && gap_ok;
}

// 7. random rank-1 POVM ensemble on the pure rotation scenario
bool crit7(std::string& msg) {
    Prob p = rotations(1.0, kPi / 4, kPi / 4, msg);
    if (!p) return false;
    qm_weight wiw = qm_weight_scalar(1.0);
    double cn = 0;
    ACC_CHECK(qm_ncrb_qubit(p.get(), &wiw, &cn), "ncrb_qubit");
    const int n = 10000;
    std::vector<double> gs(n), precs(n);
    for (int i = 0; i < n; ++i) {
        Rand rng = make_rng(4207, i);
        qm_povm* rawm = nullptr;
        ACC_CHECK(qm_random_rank1_povm(2, 3, rng.get(), &rawm), "random_rank1_povm");
        Povm m(rawm);
        qm_regret_stats st{};
        ACC_CHECK(qm_regret_report(p.get(), m.get(), &st), "regret_report");
        gs[i] = st.gap;
        precs[i] = st.precision;
    }
    double min_g = *std::min_element(gs.begin(), gs.end());
    double max_prec = *std::max_element(precs.begin(), precs.end());
    int confused = 0;  // near-zero G yet competitive precision
    for (int i = 0; i < n; ++i)
        if (gs[i] < 1e-3 && !(precs[i] < 0.5 * max_prec)) ++confused;
    msg = "10^4 rank-1 draws: min G " + eng(min_g) + ", max precision x ncrb " +
          eng(max_prec * cn) + ", small-G high-precision draws " + std::to_string(confused);
    return min_g < 1e-4 && max_prec >= 0.8 / cn && max_prec <= 1.0 / cn + 1e-7 &&
           confused == 0;
}

// 8. projective-Z golden values on the pure rotation scenario
bool crit8(std::string& msg) {
    Prob p = rotations(1.0, kPi / 4, kPi / 4, msg);
    if (!p) return false;
    const double ez[2][8] = {
        {1, 0, 0, 0, 0, 0, 0, 0},  // |0><0|
        {0, 0, 0, 0, 0, 0, 1, 0},  // |1><1|
    };
    std::vector<double> effects;
    effects.insert(effects.end(), ez[0], ez[0] + 8);
    effects.insert(effects.end(), ez[1], ez[1] + 8);
    qm_povm* rawm = nullptr;
    ACC_CHECK(qm_povm_create(2, 2, effects.data(), &rawm), "povm_create");
    Povm m(rawm);
    double f[4];
    ACC_CHECK(qm_classical_fisher(p.get(), m.get(), f), "classical_fisher");
    const double ref[4] = {0.5, -0.5, -0.5, 0.5};
    double worst_f = 0;
    for (int k = 0; k < 4; ++k) worst_f = std::max(worst_f, std::abs(f[k] - ref[k]));
    qm_regret_stats st{};
    ACC_CHECK(qm_regret_report(p.get(), m.get(), &st), "regret_report");
    msg = "fisher err " + eng(worst_f) + ", |G| " + eng(std::abs(st.gap)) + ", precision " +
          eng(st.precision);
    return worst_f <= 1e-12 && std::abs(st.gap) <= 1e-9 && st.precision == 0.0;
}

// 9. matrix inequalities: QFI dominates every classical Fisher matrix, G >= 0
bool crit9(std::string& msg) {
    double worst_eig = 1e300, worst_g = 1e300;
    for (int i = 0; i < 1000; ++i) {
        Rand rng = make_rng(4209, i);
        int d = 2 + (i % 2);
        qm_problem* rawp = nullptr;
        ACC_CHECK(qm_random_problem(d, rng.get(), &rawp), "random_problem");
        Prob p(rawp);
        qm_povm* rawm = nullptr;
        if (i % 4 < 2)
            ACC_CHECK(qm_random_rank1_povm(d, d + 1, rng.get(), &rawm), "random_rank1_povm");
        else
            ACC_CHECK(qm_random_fullrank_povm(d, 3, rng.get(), &rawm), "random_fullrank_povm");
        Povm m(rawm);
        double qfi[4], f[4];
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        ACC_CHECK(qm_classical_fisher(p.get(), m.get(), f), "classical_fisher");
        double a = qfi[0] - f[0], b = qfi[1] - f[1], c = qfi[3] - f[3];
        double mineig = 0.5 * (a + c) - std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        worst_eig = std::min(worst_eig, mineig);
        qm_regret_stats st{};
        ACC_CHECK(qm_regret_report(p.get(), m.get(), &st), "regret_report");
        worst_g = std::min(worst_g, st.gap);
    }
    msg = "1000 pairs: min eig(QFI - F) " + eng(worst_eig) + ", min G " + eng(worst_g);
    return worst_eig >= -1e-8 && worst_g >= -1e-9;
}

// 10. bound ordering sldcrb <= hcrb <= ncrb; hcrb = ncrb on pure states
bool crit10(std::string& msg) {
    qm_weight wi = qm_weight_scalar(1.0);
    double worst_order = -1e300;
    for (int i = 0; i < 200; ++i) {
        Rand rng = make_rng(4210, i);
        int d = 2 + (i % 2);
        qm_problem* raw = nullptr;
        ACC_CHECK(qm_random_problem(d, rng.get(), &raw), "random_problem");
        Prob p(raw);
        double sld = 0;
        ACC_CHECK(qm_sld_crb(p.get(), &wi, &sld), "sld_crb");
        qm_bound_result hres{}, nres{};
        ACC_CHECK(qm_hcrb_general(p.get(), &wi, nullptr, &hres), "hcrb_general");
        ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
        worst_order = std::max(worst_order, sld - hres.value);
        worst_order = std::max(worst_order, hres.value - nres.value);
    }
    double worst_pure = 0;
    for (int i = 0; i < 50; ++i) {
        Rand rng = make_rng(4211, i);
        int d = 2 + (i % 2);
        qm_problem* raw = nullptr;
        ACC_CHECK(qm_random_pure_problem(d, rng.get(), &raw), "random_pure_problem");
        Prob p(raw);
        qm_bound_result hres{}, nres{};
        ACC_CHECK(qm_hcrb_general(p.get(), &wi, nullptr, &hres), "hcrb_general");
        ACC_CHECK(qm_ncrb_general(p.get(), &wi, nullptr, &nres), "ncrb_general");
        worst_pure = std::max(worst_pure, std::abs(hres.value - nres.value) / nres.value);
    }
    msg = "200 ordering margins max " + eng(worst_order) + "; 50 pure |hcrb-ncrb|/ncrb max " +
          eng(worst_pure);
    return worst_order <= 1e-7 && worst_pure <= 1e-5;
}

// 11. the NCRB weight-sweep envelope traces the attainability hyperbola
bool crit11(std::string& msg) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        Rand rng = make_rng(1300 + i, 0);
        qm_problem* raw = nullptr;
        ACC_CHECK(qm_random_problem(2, rng.get(), &raw), "random_problem");
        Prob p(raw);
        double qfi[4];
        ACC_CHECK(qm_sld_qfi(p.get(), qfi), "sld_qfi");
        double det = qfi[0] * qfi[3] - qfi[1] * qfi[2];
        double a = qfi[3] / det, b = qfi[0] / det, c = -qfi[1] / det;
        const int n = 101;
        std::vector<double> wgrid(n), v1(n - 1), v2(n - 1);
        ACC_CHECK(qm_default_envelope_weights(n, 0.5, 2.0, wgrid.data()), "weights");
        int npts = 0;
        ACC_CHECK(qm_bound_envelope(p.get(), 1, wgrid.data(), n, v1.data(), v2.data(), &npts),
                  "bound_envelope");
        for (int k = 0; k < npts; ++k) {
            double v2ref = b + (a * b - c * c) / (v1[k] - a);
            worst = std::max(worst, std::abs(v2[k] - v2ref) / v2ref);
        }
    }
    msg = "20 qubits x 101 weights: max envelope-vs-hyperbola rel dev " + eng(worst);
    return worst <= 1e-4;
}

// 12. LWUR feasible-region convexity (midpoints) and KKT residuals at
// numeric LWB optima
bool crit12(std::string& msg) {
    int midpoint_bad = 0;
    double worst_mid = -1e300;
    for (int i = 0; i < 1000; ++i) {
        Rand rng = make_rng(4212, i);
        double f11 = 0.2 + 5.0 * uniform(rng);
        double f22 = 0.2 + 5.0 * uniform(rng);
        double ct = 0.02 + 0.96 * uniform(rng);
        double pt[2][2];
        for (int k = 0; k < 2; ++k) {
            bool found = false;
            for (int tries = 0; tries < 500 && !found; ++tries) {
                double g1 = 0.02 + 0.98 * uniform(rng);
                double g2 = 0.02 + 0.98 * uniform(rng);
                double v1 = 1.0 / (g1 * f11), v2 = 1.0 / (g2 * f22);
                double slack = 0;
                ACC_CHECK(qm_lwur_slack(f11, f22, ct, v1, v2, &slack), "lwur_slack");
                if (slack <= 0.0) {
                    pt[k][0] = v1;
                    pt[k][1] = v2;
                    found = true;
                }
            }
            if (!found) {
                msg = "could not sample a feasible point";
                return false;
            }
        }
        double slack_mid = 0;
        ACC_CHECK(qm_lwur_slack(f11, f22, ct, 0.5 * (pt[0][0] + pt[1][0]),
                                0.5 * (pt[0][1] + pt[1][1]), &slack_mid),
                  "lwur_slack");
        worst_mid = std::max(worst_mid, slack_mid);
        if (slack_mid > 1e-10) ++midpoint_bad;
    }
    double worst_kkt = 0;
    for (int i = 0; i < 200; ++i) {
        Rand rng = make_rng(7700 + i, 0);
        double f11 = 0.2 + 5.0 * uniform(rng);
        double f22 = 0.2 + 5.0 * uniform(rng);
        double ct = 0.02 + 0.96 * uniform(rng);
        qm_lwb_result lres{};
        ACC_CHECK(qm_lwb(f11, f22, ct, &lres), "lwb");
        if (lres.path != 2) {
            msg = "interior c~ spec took a closed path";
            return false;
        }
        worst_kkt = std::max(worst_kkt, lres.kkt_residual);
    }
    msg = "1000 midpoints: violations " + std::to_string(midpoint_bad) + " (max slack " +
          eng(worst_mid) + "); 200 numeric optima: max kkt " + eng(worst_kkt);
    return midpoint_bad == 0 && worst_kkt <= 1e-9;
}

struct Criterion {
    int index;
    const char* name;
    bool (*fn)(std::string&);
    double budget_s;  // 0 = no explicit budget
};

}  // namespace

int run_acceptance(std::FILE* out) {
    const Criterion criteria[] = {
        {1, "rotation closed forms vs variational solvers", crit1, 60.0},
        {2, "finite-gap example (numeric lwb, golden quadruple)", crit2, 0.0},
        {3, "infinite-gap example (singular QFI)", crit3, 0.0},
        {4, "diagonal-QFI reparameterization collapses ncrb to lwb", crit4, 10.0},
        {5, "corner-coupled diagonal family, d=2..5", crit5, 120.0},
        {6, "random-ensemble ordering and near-c~=1 gap", crit6, 600.0},
        {7, "random rank-1 POVM ensemble statistics", crit7, 300.0},
        {8, "projective-Z golden values", crit8, 0.0},
        {9, "QFI dominance and nonnegative regret gap", crit9, 0.0},
        {10, "bound ordering; hcrb = ncrb on pure states", crit10, 0.0},
        {11, "NCRB envelope vs attainability hyperbola", crit11, 0.0},
        {12, "LWUR convexity and KKT residuals", crit12, 0.0},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string msg;
        bool ok = c.fn(msg);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && c.budget_s > 0.0 && secs >= c.budget_s) {
            ok = false;
            msg += " [over the " + std::to_string(static_cast<int>(c.budget_s)) + "s budget]";
        }
        if (!ok) ++failed;
        std::fprintf(out, "[%2d] %s  %8.3fs  %s: %s\n", c.index, ok ? "PASS" : "FAIL", secs,
                     c.name, msg.c_str());
        std::fflush(out);
    }
    std::fprintf(out, "acceptance: %d/12 criteria passed\n", 12 - failed);
    return failed;
}
