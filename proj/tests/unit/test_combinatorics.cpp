#include <doctest.h>

#include <chrono>
#include <cmath>

#include "isosym/combinatorics.hpp"
#include "isosym/errors.hpp"

using namespace isosym;

namespace {

// n! / prod parts!, by repeated binomials.
Count composition_count(const std::vector<unsigned>& parts) {
    Count out = 1;
    unsigned total = 0;
    for (auto p : parts) {
        total += p;
        out *= binomial(total, p);
    }
    return out;
}

} // namespace

TEST_CASE("multi_indices examples") {
    CHECK(multi_indices(2, 2) == std::vector<MultiIndex>{{0, 2}, {1, 1}, {2, 0}});
    CHECK(multi_indices(4, 0) == std::vector<MultiIndex>{{0, 0, 0, 0}});
    CHECK(multi_indices(3, 3).size() == 10);
}

TEST_CASE("multi_indices are strictly increasing with the right count") {
    for (std::size_t d = 1; d <= 4; ++d) {
        for (unsigned k = 0; k <= 8; ++k) {
            const auto all = multi_indices(d, k);
            CHECK(all.size() == binomial(k + static_cast<unsigned>(d) - 1, static_cast<unsigned>(d) - 1));
            for (std::size_t i = 0; i < all.size(); ++i) {
                CHECK(all[i].degree() == k);
                if (i > 0) {
                    CHECK(all[i - 1] < all[i]);
                }
            }
        }
    }
}

TEST_CASE("multinomial weights sum to d^k") {
    for (std::size_t d = 1; d <= 4; ++d) {
        for (unsigned k = 0; k <= 8; ++k) {
            Count sum = 0;
            for (const auto& g : multi_indices(d, k)) {
                sum += multinomial_weight(g);
            }
            Count power = 1;
            for (unsigned i = 0; i < k; ++i) {
                power *= d;
            }
            CHECK(sum == power);
        }
    }
}

TEST_CASE("scaled weights: sum of weight * |beta^gamma|^2 is 1 on the unit sphere") {
    const std::vector<double> beta{0.6, 0.0, 0.8};
    for (unsigned q = 0; q <= 6; ++q) {
        double sum = 0.0;
        for (const auto& g : multi_indices(3, q)) {
            double p = 1.0;
            for (std::size_t j = 0; j < 3; ++j) {
                p *= std::pow(beta[j], 2.0 * g[j]);
            }
            sum += static_cast<double>(multinomial_weight(g)) * p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-14);
    }
}

TEST_CASE("trinomial coefficient matches the composition count") {
    for (unsigned m = 0; m <= 6; ++m) {
        for (unsigned k = 0; k <= m; ++k) {
            for (unsigned a = 0; a + k <= m; ++a) {
                for (const auto& alpha : multi_indices(2, a)) {
                    for (const auto& gamma : multi_indices(2, m - k - a)) {
                        const Trinomial t{m, alpha, gamma, k};
                        const auto expected = composition_count({alpha[0], alpha[1], gamma[0], gamma[1], k});
                        CHECK(trinomial_coeff(t) == expected);
                        CHECK(trinomial_coeff(t) == factorial(m) / (alpha.factorial() * gamma.factorial() * factorial(k)));
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(trinomial_coeff({3, {1, 0}, {0, 1}, 0}), InvariantViolation);
    CHECK(trinomial_signed(2, {-1, 3}, {0, 0}, 0) == 0);
}

TEST_CASE("exact integers refuse to overflow") {
    CHECK(factorial(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial(21), Overflow);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(62, 31) == 465428353255261088ULL);
    CHECK_THROWS_AS(binomial(68, 34), Overflow);
}

TEST_CASE("Pascal identity for trinomial coefficients, exhaustive") {
    CHECK(verify_multinomial_recurrence(0, 1));
    CHECK(verify_multinomial_recurrence(1, 2));
    CHECK(verify_multinomial_recurrence(5, 3));
    const auto start = std::chrono::steady_clock::now();
    for (unsigned n = 0; n <= 6; ++n) {
        for (std::size_t d = 1; d <= 3; ++d) {
            CHECK(verify_multinomial_recurrence(n, d));
        }
    }
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("enumeration bound") { CHECK_THROWS_AS(multi_indices(12, 30), TooLarge); }
