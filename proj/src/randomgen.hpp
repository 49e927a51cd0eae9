// Deterministic random generation of estimation problems and POVMs.
// A small counter-based generator (SplitMix64) keyed by (seed, stream)
// keeps batches reproducible across platforms and run orders: instance i
// of a batch draws from stream i, so results are independent of execution
// order and byte-identical between runs.

#pragma once

#include <cstdint>

#include "matrix.hpp"
#include "measurement.hpp"
#include "model.hpp"

namespace qmetro {

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform01();  // in [0, 1)
    double gaussian();   // standard normal (Marsaglia polar, spare cached)
    cx cgauss();         // independent N(0,1) real and imaginary parts

  private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Square matrix of independent complex Gaussian entries.
cmat random_ginibre(int d, Rng& rng);

// G G^dag / Tr[G G^dag]: density operator from the Hilbert-Schmidt measure.
cmat random_density_hs(int d, Rng& rng);

cmat random_traceless_hermitian(int d, Rng& rng);

// HS-random state plus two traceless Hermitian derivative directions.
// Draws are retried (up to 100 triples) if the SLDs are not defined.
Problem random_problem(int d, Rng& rng);

// Pure state |psi><psi| with derivatives i[rho, G_i] generated by random
// traceless Hermitians, so the tangent stays on the pure-state manifold.
Problem random_pure_problem(int d, Rng& rng);

// m rank-1 effects from Gaussian kets, symmetrised to a resolution of the
// identity: Pi_i = A^{-1/2} |psi_i><psi_i| A^{-1/2} with A = sum |psi_i><psi_i|.
// Requires m >= d; redraws (up to 100) while A is near-singular.
Povm random_rank1_povm(int d, int m, Rng& rng);

// m full-rank effects Pi_i = A^{-1/2} G_i G_i^dag A^{-1/2}. Requires m >= 2.
Povm random_fullrank_povm(int d, int m, Rng& rng);

}  // namespace qmetro
