#include "isosym/random.hpp"

#include <cmath>
#include <numbers>

namespace isosym {

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Scalar Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

unsigned Rng::between(unsigned lo, unsigned hi) {
    return lo + static_cast<unsigned>(next() % (static_cast<std::uint64_t>(hi - lo) + 1));
}

ComplexMatrix random_matrix(Rng& rng, std::size_t n, double scale) {
    ComplexMatrix out(n, n);
    for (auto& z : out.entries()) {
        z = scale * rng.complex_normal();
    }
    return out;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix g = random_matrix(rng, n);
    // Modified Gram-Schmidt, twice for orthogonality to working precision.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                Scalar dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    dot += std::conj(g(i, k)) * g(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    g(i, j) -= dot * g(i, k);
                }
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                norm += std::norm(g(i, j));
            }
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i) {
                g(i, j) /= norm;
            }
        }
    }
    return g;
}

} // namespace isosym
