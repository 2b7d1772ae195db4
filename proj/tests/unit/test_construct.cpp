#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "isosym/classify.hpp"
#include "isosym/combinatorics.hpp"
#include "isosym/construct.hpp"
#include "isosym/defect.hpp"
#include "isosym/errors.hpp"

using namespace isosym;

namespace {

ComplexMatrix monomial(const MultiOperator& q, const MultiIndex& a) {
    ComplexMatrix out = ComplexMatrix::identity(q.dim());
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (unsigned p = 0; p < a[j]; ++p) {
            out = out * q[j];
        }
    }
    return out;
}

double max_cross(const MultiOperator& r, const MultiOperator& q) {
    double worst = 0.0;
    for (const auto& a : r) {
        for (const auto& b : q) {
            worst = std::max({worst, fro_norm(a * b - b * a), fro_norm(a * adjoint(b) - adjoint(b) * a)});
        }
    }
    return worst;
}

} // namespace

TEST_CASE("reference pair is exact") {
    const auto e = example_2_2_pair();
    REQUIRE(e.d() == 2);
    CHECK(e[0] == ComplexMatrix{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    CHECK(e[1] == ComplexMatrix::identity(3));
}

TEST_CASE("scaled tuple") {
    const auto base = testing::jordan2();
    const auto t = scaled_tuple({base, {0.6, 0.8}});
    CHECK(t.d() == 2);
    CHECK(t[1] == 0.8 * base);
    CHECK(is_isosymmetric(scaled_tuple({base, {1.0, 0.0}}), 3, 2).holds);
    CHECK_THROWS_AS(scaled_tuple({base, {0.6, 0.7}}), BetaNotNormalized);
    const ComplexMatrix h{{1.0, Scalar(2.0, -1.0)}, {Scalar(2.0, 1.0), -3.0}};
    const auto s = 1.0 / std::sqrt(2.0);
    CHECK(is_n_symmetric(scaled_tuple({h, {s, s}}), 1).holds);
}

TEST_CASE("tensor sum: smallest case, shape and exact cross-commutation") {
    const auto one = MultiOperator::identity(1, 1);
    const auto n = testing::single(shift_block(2, 2));
    CHECK(tensor_sum(one, n)[0] == testing::jordan2());

    const auto r = random_commuting_tuple(2, 3, 4);
    const auto q = nilpotent_tuple(2, 4, 3, 5, true);
    const auto t = tensor_sum(r, q);
    CHECK(t.dim() == 12);
    const auto [rr, qq] = tensor_parts(r, q);
    CHECK(max_cross(rr, qq) == 0.0);
    CHECK_THROWS_AS(tensor_sum(r, MultiOperator::zero(3, 2)), ArityMismatch);
}

TEST_CASE("tensor sum of a (1,1)-isosymmetric pair and a 2-nilpotent pair is (3,4)-isosymmetric") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto q = nilpotent_tuple(2, 3, 2, seed, seed % 2 == 1);
        const auto t = tensor_sum(example_2_2_pair(), q);
        const auto l = defect_Lambda(t, 3, 4);
        CHECK(l.is_zero);
        CHECK(l.norm / (1.0 + defect_magnitude(t, 3, 4)) <= 1e-15);
    }
}

TEST_CASE("Jordan augmentation") {
    const auto one = MultiOperator::identity(1, 1);
    CHECK(jordan_augment({one, {1.0}, 2})[0] == testing::jordan2());
    CHECK(is_isosymmetric(jordan_augment({one, {1.0}, 2}), 3, 4).holds);

    const auto e = example_2_2_pair();
    const auto zero_mu = jordan_augment({e, {0.0, 0.0}, 3});
    CHECK(zero_mu[0] == kron(ComplexMatrix::identity(3), e[0]));
    CHECK(is_isosymmetric(zero_mu, 1, 1).holds);

    const auto b = jordan_augment({e, {1.0, 1.0}, 2});
    const auto l = defect_Lambda(b, 3, 4);
    CHECK(l.is_zero);
    CHECK(l.norm == 0.0);

    const auto [rr, qq] = jordan_parts({e, {Scalar(0.5, 1.0), 2.0}, 3});
    CHECK(max_cross(rr, qq) == 0.0);
    for (const auto& a : multi_indices(2, 3)) {
        CHECK(monomial(qq, a) == ComplexMatrix::zero(qq.dim()));
    }
    CHECK_THROWS_AS(jordan_augment({e, {1.0}, 2}), ArityMismatch);
    CHECK_THROWS_AS(jordan_augment({e, {1.0, 1.0}, 0}), InvalidParams);
}

TEST_CASE("nilpotent tuples") {
    const auto one = nilpotent_tuple(1, 2, 2, 3);
    CHECK(one[0](0, 0) == 0.0);
    CHECK(one[0](1, 0) == 0.0);
    CHECK(one[0](1, 1) == 0.0);
    CHECK(one[0](0, 1) != 0.0);
    for (unsigned q = 1; q <= 4; ++q) {
        for (bool mix : {false, true}) {
            const auto t = nilpotent_tuple(3, 5, q, 100 + q, mix);
            for (const auto& a : multi_indices(3, q)) {
                CHECK(fro_norm(monomial(t, a)) <= (mix ? 1e-13 : 0.0));
            }
            const auto s = defect_S(t, 2 * q);
            CHECK(s.is_zero);
            CHECK(s.norm <= 1e-13 * (1.0 + defect_magnitude(t, 0, 2 * q)));
        }
    }
    CHECK_THROWS_AS(nilpotent_tuple(2, 3, 4, 0), InvalidParams);
}

TEST_CASE("random commuting tuples") {
    const auto a = random_commuting_tuple(3, 7, 42);
    const auto b = random_commuting_tuple(3, 7, 42);
    CHECK(a == b);
    CHECK_FALSE(a == random_commuting_tuple(3, 7, 43));
    CHECK(a.commutation_residual() <= default_tol_comm);
    CHECK(random_commuting_tuple(1, 5, 1).d() == 1);
    CHECK_THROWS_AS(random_commuting_tuple(2, max_random_dim + 1, 0), InvalidParams);
}

TEST_CASE("class fixtures") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(is_m_isometric(spherical_normal_tuple(3, 4, seed), 1).holds);
        CHECK(is_n_symmetric(hermitian_tuple(2, 5, seed), 1).holds);
        const auto z = square_zero_tuple(2, 4, seed);
        CHECK(is_isosymmetric(z, 1, 1).holds);
        CHECK_FALSE(is_m_isometric(z, 1).holds);
    }
}
