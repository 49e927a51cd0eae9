#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "matrix.hpp"
#include "randomgen.hpp"

using namespace qmetro;

namespace {

cmat random_hermitian(int d, Rng& rng) {
    cmat g = random_ginibre(d, rng);
    return hermitize(g);
}

}  // namespace

TEST_CASE("eig_hermitian: ascending values, orthonormal vectors, reconstruction") {
    for (int d : {2, 3, 5, 8}) {
        Rng rng(101, static_cast<std::uint64_t>(d));
        cmat a = random_hermitian(d, rng);
        EigenSystem es = eig_hermitian(a);

        REQUIRE(static_cast<int>(es.values.size()) == d);
        for (int k = 1; k < d; ++k) CHECK(es.values[k] >= es.values[k - 1]);

        // V^dag V = I
        cmat gram = dagger(es.vectors) * es.vectors;
        for (int i = 0; i < d; ++i) gram(i, i) -= 1.0;
        CHECK(max_abs(gram) < 1e-12);

        // V D V^dag = A
        cmat rebuilt(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                cx s{};
                for (int k = 0; k < d; ++k)
                    s += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
                rebuilt(i, j) = s;
            }
        CHECK(max_abs(rebuilt - a) < 1e-11 * (1.0 + max_abs(a)));
    }
}

TEST_CASE("psd_sqrt squares back to the input") {
    Rng rng(102);
    cmat g = random_ginibre(4, rng);
    cmat a = g * dagger(g);
    cmat s = psd_sqrt(a);
    CHECK(herm_defect(s) < 1e-12 * (1.0 + max_abs(s)));
    CHECK(max_abs(s * s - a) < 1e-11 * (1.0 + max_abs(a)));
}

TEST_CASE("psd_sqrt clips rounding noise but rejects real negativity") {
    // -5e-11 sits inside the clipping window
    cmat ok = diagmat({1.0, -5e-11});
    cmat s = psd_sqrt(ok);
    CHECK(s(0, 0).real() == doctest::Approx(1.0));
    CHECK(s(1, 1).real() == 0.0);

    // -1e-9 is genuinely negative
    auto c = trap([] { psd_sqrt(diagmat({1.0, -1e-9})); });
    REQUIRE(c.threw);
    CHECK(c.code == errc::not_psd);
}

TEST_CASE("trabs_hermitian sums absolute eigenvalues") {
    CHECK(trabs_hermitian(diagmat({3.0, -4.0})) == doctest::Approx(7.0));

    Rng rng(103);
    cmat a = random_hermitian(5, rng);
    CHECK(trabs_hermitian(a) >= std::abs(trace(a).real()) - 1e-12);
}

TEST_CASE("trabs_rho_commutator: swap symmetry and direct formula") {
    Rng rng(104);
    cmat rho = random_density_hs(3, rng);
    cmat x1 = random_traceless_hermitian(3, rng);
    cmat x2 = random_traceless_hermitian(3, rng);

    double fwd = trabs_rho_commutator(rho, x1, x2);
    double rev = trabs_rho_commutator(rho, x2, x1);
    CHECK(fwd == rev);  // canonical argument order makes this bit-exact

    // against the definition TrAbs of i sqrt(rho) [X1,X2] sqrt(rho)
    cmat s = psd_sqrt(rho);
    cmat h = hermitize(cx(0.0, 1.0) * (s * commutator(x1, x2) * s));
    CHECK(fwd == doctest::Approx(trabs_hermitian(h)).epsilon(1e-10));
}

TEST_CASE("require_hermitian names the offending entry") {
    cmat bad = mat2(1.0, cx(0.0, 0.5), 0.0, 1.0);
    auto c = trap([&] { require_hermitian(bad, "rho"); });
    REQUIRE(c.threw);
    CHECK(c.code == errc::validation);
    CHECK(contains(c.message, "rho"));
    CHECK(contains(c.message, "(0,1)"));
    CHECK(contains(c.message, "Hermitian"));
}

TEST_CASE("require_density gates trace and positivity") {
    auto tr_bad = trap([] { require_density(diagmat({0.7, 0.7}), "rho"); });
    REQUIRE(tr_bad.threw);
    CHECK(tr_bad.code == errc::validation);
    CHECK(contains(tr_bad.message, "trace"));

    auto eig_bad = trap([] { require_density(diagmat({1.5, -0.5}), "rho"); });
    REQUIRE(eig_bad.threw);
    CHECK(eig_bad.code == errc::validation);
    CHECK(contains(eig_bad.message, "eigenvalue"));

    // boundary rank-deficient state is fine
    require_density(diagmat({1.0, 0.0}), "rho");
}

TEST_CASE("2x2 helpers: inverse and eigenvalues") {
    r2x2 f;
    f.m[0][0] = 4.0;
    f.m[0][1] = f.m[1][0] = 1.0;
    f.m[1][1] = 3.0;

    r2x2 inv = inv2(f);  // det 11
    CHECK(inv.m[0][0] == doctest::Approx(3.0 / 11.0));
    CHECK(inv.m[1][1] == doctest::Approx(4.0 / 11.0));
    CHECK(inv.m[0][1] == doctest::Approx(-1.0 / 11.0));
    CHECK(inv.m[1][0] == doctest::Approx(-1.0 / 11.0));

    double lam[2];
    eig2_sym(f, lam);  // (7 -+ sqrt(5))/2, ascending
    CHECK(lam[0] == doctest::Approx((7.0 - std::sqrt(5.0)) / 2.0));
    CHECK(lam[1] == doctest::Approx((7.0 + std::sqrt(5.0)) / 2.0));
    CHECK(lam[0] <= lam[1]);

    c2x2 g;
    g.m[0][0] = 2.0;
    g.m[0][1] = cx(0.0, 1.0);
    g.m[1][0] = cx(0.0, -1.0);
    g.m[1][1] = 2.0;
    c2x2 ginv = inv2c(g);  // det 3
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cx prod = g.m[i][0] * ginv.m[0][j] + g.m[i][1] * ginv.m[1][j];
            CHECK(std::abs(prod - (i == j ? cx(1.0) : cx(0.0))) < 1e-14);
        }
}
