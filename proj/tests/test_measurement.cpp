#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "measurement.hpp"
#include "model.hpp"
#include "randomgen.hpp"
#include "scenarios.hpp"

using namespace qmetro;

namespace {
const double kPi = std::acos(-1.0);

Povm z_projectors() {
    return make_povm({diagmat({1.0, 0.0}), diagmat({0.0, 1.0})});
}
}  // namespace

TEST_CASE("make_povm gates its inputs") {
    // incomplete family
    auto inc = trap([] { make_povm({diagmat({0.5, 0.5})}); });
    REQUIRE(inc.threw);
    CHECK(inc.code == errc::validation);
    CHECK(contains(inc.message, "identity"));

    // negative effect, named by index
    auto neg = trap([] {
        make_povm({diagmat({1.0, 0.0}), diagmat({0.5, 1.5}), diagmat({-0.5, -0.5})});
    });
    REQUIRE(neg.threw);
    CHECK(neg.code == errc::not_psd);
    CHECK(contains(neg.message, "effect 2"));

    auto mixed = trap([] { make_povm({diagmat({1.0, 0.0}), diagmat({0.0, 0.5, 0.5})}); });
    REQUIRE(mixed.threw);
    CHECK(mixed.code == errc::dimension);

    auto empty = trap([] { make_povm({}); });
    REQUIRE(empty.threw);
    CHECK(empty.code == errc::validation);

    // the trivial single-effect POVM {I} is well formed
    Povm triv = make_povm({cmat::identity(3)});
    CHECK(triv.outcomes() == 1);
    CHECK(triv.dim() == 3);
}

TEST_CASE("probabilities: normalization and derivative sums") {
    Rng rng(501);
    Problem p = random_problem(3, rng);
    Povm povm = random_rank1_povm(3, 5, rng);
    OutcomeStats st = probabilities(p, povm);
    REQUIRE(st.p.size() == 5);

    double psum = 0.0, d1sum = 0.0, d2sum = 0.0;
    for (int k = 0; k < 5; ++k) {
        CHECK(st.p[k] >= 0.0);
        psum += st.p[k];
        d1sum += st.dp1[k];
        d2sum += st.dp2[k];
    }
    CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(d1sum) < 1e-10);
    CHECK(std::abs(d2sum) < 1e-10);

    auto dim = trap([&] { probabilities(p, z_projectors()); });
    REQUIRE(dim.threw);
    CHECK(dim.code == errc::dimension);
}

TEST_CASE("probabilities clip exact zeros") {
    // pure |0><0| measured in the z basis: p = (1, 0), no negative residue
    cmat rho = diagmat({1.0, 0.0});
    cmat d1 = mat2(0.0, 0.1, 0.1, 0.0);
    cmat d2 = mat2(0.0, cx(0.0, -0.1), cx(0.0, 0.1), 0.0);
    Problem p = make_problem(rho, d1, d2);
    OutcomeStats st = probabilities(p, z_projectors());
    CHECK(st.p[0] == doctest::Approx(1.0));
    CHECK(st.p[1] == 0.0);
}

TEST_CASE("classical_fisher golden: z measurement on the r=1 rotation state") {
    Problem p = rotations_problem({1.0, kPi / 4.0, kPi / 4.0});
    r2x2 f = classical_fisher(p, z_projectors());
    CHECK(f.m[0][0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.m[1][1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.m[0][1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(f.m[1][0] == f.m[0][1]);
}

TEST_CASE("classical_fisher rejects divergent outcomes") {
    // outcome with p = 0 but dp != 0: no locally unbiased estimator exists
    cmat rho = diagmat({1.0, 0.0});
    cmat d1 = diagmat({-0.1, 0.1});
    cmat d2 = mat2(0.0, 0.1, 0.1, 0.0);
    Problem p = make_problem(rho, d1, d2);
    auto c = trap([&] { classical_fisher(p, z_projectors()); });
    REQUIRE(c.threw);
    CHECK(c.code == errc::domain);
    CHECK(contains(c.message, "vanishing probability"));

    auto tol = trap([&] { classical_fisher(p, z_projectors(), -1.0); });
    REQUIRE(tol.threw);
    CHECK(tol.code == errc::bad_argument);
}

TEST_CASE("precision figure of merit") {
    r2x2 f{};
    f.m[0][0] = f.m[1][1] = 2.0;
    CHECK(precision(f) == doctest::Approx(1.0));

    r2x2 s{};
    s.m[0][0] = s.m[1][1] = 1.0;
    s.m[0][1] = s.m[1][0] = 1.0;  // singular
    CHECK(precision(s) == 0.0);
}

TEST_CASE("regret_report is internally consistent") {
    Rng rng(502);
    Problem p = random_problem(2, rng);
    Povm povm = random_rank1_povm(2, 3, rng);
    RegretReport rep = regret_report(p, povm);

    r2x2 fq = sld_qfi(p);
    r2x2 f = classical_fisher(p, povm);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(rep.classical_fisher.m[i][j] == doctest::Approx(f.m[i][j]).epsilon(1e-12));
            CHECK(rep.regret.m[i][j] == doctest::Approx(fq.m[i][j] - f.m[i][j]).epsilon(1e-12));
        }

    const double ct = incompatibility(p);
    CHECK(rep.delta1 == doctest::Approx(std::sqrt(std::max(rep.regret.m[0][0], 0.0) / fq.m[0][0])));
    CHECK(rep.delta2 == doctest::Approx(std::sqrt(std::max(rep.regret.m[1][1], 0.0) / fq.m[1][1])));
    const double gap = rep.delta1 * rep.delta1 + rep.delta2 * rep.delta2 +
                       2.0 * std::sqrt(1.0 - ct * ct) * rep.delta1 * rep.delta2 - ct * ct;
    CHECK(rep.gap == doctest::Approx(gap).epsilon(1e-12));
    CHECK(rep.precision == doctest::Approx(precision(f)));

    // the regret matrix is PSD (information never exceeds the quantum limit)
    double ev[2];
    eig2_sym(rep.regret, ev);
    CHECK(ev[0] > -1e-10);
}

TEST_CASE("regret_report golden: optimal-direction measurement closes the gap") {
    // z measurement on the pure r=1 state: F has det 0 but G reaches 0
    Problem p = rotations_problem({1.0, kPi / 4.0, kPi / 4.0});
    RegretReport rep = regret_report(p, z_projectors());
    CHECK(std::abs(rep.gap) < 1e-9);
    CHECK(rep.precision == 0.0);
}

TEST_CASE("regret_report needs informative quantum directions") {
    // drho1 = 0 makes the first QFI diagonal vanish
    cmat rho = diagmat({0.6, 0.4});
    cmat d2 = mat2(0.0, 0.1, 0.1, 0.0);
    Problem p = make_problem(rho, cmat(2), d2);
    auto c = trap([&] { regret_report(p, z_projectors()); });
    REQUIRE(c.threw);
    CHECK(c.code == errc::singular);
}
