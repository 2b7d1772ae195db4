#pragma once

#include <cstdint>
#include <random>

#include "isosym/matrix.hpp"

namespace isosym {

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence the C++ standard fixes; the distributions are written out here
/// rather than taken from <random>, whose distributions are implementation
/// defined:
///   uniform()  = (next() >> 11) * 2^-53                        in [0, 1)
///   normal()   = Box-Muller, sqrt(-2 ln(1 - u1)) cos(2 pi u2)  (one draw per pair)
///   between(lo, hi) = lo + next() % (hi - lo + 1)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seed for trial `index` of a run seeded with `seed` (splitmix64 mix).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t next() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    Scalar complex_normal();
    /// Uniform integer in [lo, hi].
    unsigned between(unsigned lo, unsigned hi);

private:
    std::mt19937_64 engine_;
};

/// n x n matrix of independent complex_normal() entries times `scale`.
ComplexMatrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0);

/// Haar-like unitary: Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

} // namespace isosym
