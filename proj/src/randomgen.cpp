#include "randomgen.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace qmetro {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr int kMaxRedraws = 100;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// U diag(1/sqrt(lambda)) U^dag, caller guarantees lambda_min > 0.
cmat inv_sqrt_psd(const EigenSystem& es) {
    const int d = es.vectors.d;
    cmat out = cmat::zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            cx s = 0.0;
            for (int k = 0; k < d; ++k)
                s += es.vectors(i, k) * std::conj(es.vectors(j, k)) /
                     std::sqrt(es.values[k]);
            out(i, j) = s;
        }
    return out;
}

cmat outer(const std::vector<cx>& v) {
    const int d = static_cast<int>(v.size());
    cmat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix64(seed) ^ mix64(kGolden * (stream + 1));
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

cx Rng::cgauss() {
    const double re = gaussian();
    const double im = gaussian();
    return cx(re, im);
}

cmat random_ginibre(int d, Rng& rng) {
    if (d < 1) fail(errc::validation, "dimension must be positive");
    cmat g(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.cgauss();
    return g;
}

cmat random_density_hs(int d, Rng& rng) {
    const cmat g = random_ginibre(d, rng);
    cmat rho = g * dagger(g);
    const double tr = trace(rho).real();
    for (auto& z : rho.a) z /= tr;
    return hermitize(rho);
}

cmat random_traceless_hermitian(int d, Rng& rng) {
    const cmat g = random_ginibre(d, rng);
    cmat h = hermitize(g);
    const cx shift = trace(h) / static_cast<double>(d);
    for (int i = 0; i < d; ++i) h(i, i) -= shift;
    return h;
}

Problem random_problem(int d, Rng& rng) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        cmat rho = random_density_hs(d, rng);
        cmat h1 = random_traceless_hermitian(d, rng);
        cmat h2 = random_traceless_hermitian(d, rng);
        try {
            Problem p = make_problem(std::move(rho), std::move(h1), std::move(h2));
            sld_operators(p);
            return p;
        } catch (const qm_error&) {
            continue;  // rank-deficient draw, try a fresh triple
        }
    }
    fail(errc::generation, "no valid problem after " + std::to_string(kMaxRedraws) +
                               " draws in dimension " + std::to_string(d));
}

Problem random_pure_problem(int d, Rng& rng) {
    if (d < 2) fail(errc::validation, "dimension must be at least 2");
    std::vector<cx> ket(d);
    double norm2 = 0.0;
    for (auto& z : ket) {
        z = rng.cgauss();
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : ket) z *= inv;
    cmat rho = outer(ket);
    const cmat g1 = random_traceless_hermitian(d, rng);
    const cmat g2 = random_traceless_hermitian(d, rng);
    cmat d1 = cx(0.0, 1.0) * commutator(rho, g1);
    cmat d2 = cx(0.0, 1.0) * commutator(rho, g2);
    return make_problem(std::move(rho), hermitize(d1), hermitize(d2));
}

Povm random_rank1_povm(int d, int m, Rng& rng) {
    if (d < 2) fail(errc::validation, "dimension must be at least 2");
    if (m < d) fail(errc::validation, "rank-1 POVM needs at least d outcomes");
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        std::vector<std::vector<cx>> kets(m, std::vector<cx>(d));
        for (auto& ket : kets)
            for (auto& z : ket) z = rng.cgauss();
        cmat a = cmat::zero(d);
        for (const auto& ket : kets) a = a + outer(ket);
        EigenSystem es = eig_hermitian(a);
        if (es.values.front() <= 1e-12) continue;
        const cmat b = inv_sqrt_psd(es);
        std::vector<cmat> effects;
        effects.reserve(m);
        for (const auto& ket : kets) {
            std::vector<cx> w(d, 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) w[i] += b(i, j) * ket[j];
            effects.push_back(outer(w));
        }
        return make_povm(std::move(effects));
    }
    fail(errc::generation, "no full-rank ket family after " +
                               std::to_string(kMaxRedraws) + " draws");
}

Povm random_fullrank_povm(int d, int m, Rng& rng) {
    if (d < 2) fail(errc::validation, "dimension must be at least 2");
    if (m < 2) fail(errc::validation, "POVM needs at least 2 outcomes");
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        std::vector<cmat> blocks;
        blocks.reserve(m);
        cmat a = cmat::zero(d);
        for (int i = 0; i < m; ++i) {
            const cmat g = random_ginibre(d, rng);
            blocks.push_back(g * dagger(g));
            a = a + blocks.back();
        }
        EigenSystem es = eig_hermitian(a);
        if (es.values.front() <= 1e-12) continue;
        const cmat b = inv_sqrt_psd(es);
        std::vector<cmat> effects;
        effects.reserve(m);
        for (const cmat& blk : blocks) effects.push_back(hermitize(b * blk * b));
        return make_povm(std::move(effects));
    }
    fail(errc::generation, "no full-rank effect sum after " +
                               std::to_string(kMaxRedraws) + " draws");
}

}  // namespace qmetro
