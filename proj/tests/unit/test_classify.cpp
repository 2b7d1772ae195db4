#include <doctest.h>

#include "helpers.hpp"
#include "isosym/classify.hpp"
#include "isosym/construct.hpp"
#include "isosym/errors.hpp"
#include "oracle.hpp"

using namespace isosym;

namespace {

// Zero cells by the superoperator oracle with an exact test; for integer
// matrices every entry is computed exactly.
std::vector<OrderPair> oracle_staircase(const MultiOperator& r, unsigned m_max, unsigned n_max) {
    std::vector<OrderPair> zeros;
    for (unsigned s = 0; s <= m_max + n_max; ++s) {
        for (unsigned m = 0; m <= std::min(s, m_max); ++m) {
            const unsigned n = s - m;
            if (n > n_max) {
                continue;
            }
            bool dominated = false;
            for (const auto& z : zeros) {
                dominated = dominated || (z.first <= m && z.second <= n);
            }
            if (!dominated && fro_norm(oracle::lambda(r, m, n)) == 0.0) {
                zeros.emplace_back(m, n);
            }
        }
    }
    return zeros;
}

} // namespace

TEST_CASE("reference pair verdicts") {
    const auto e = example_2_2_pair();
    CHECK(is_isosymmetric(e, 1, 1).holds);
    CHECK_FALSE(is_m_isometric(e, 1).holds);
    CHECK_FALSE(is_n_symmetric(e, 1).holds);
    CHECK(is_isosymmetric(e, 1, 1).orders == std::vector<unsigned>{1, 1});
}

TEST_CASE("staircases agree with the exact oracle") {
    const auto e = example_2_2_pair();
    const auto j = testing::single(testing::jordan2());
    const auto je = minimal_orders(j, 4, 4);
    CHECK(je.staircase == std::vector<OrderPair>{{1, 1}, {0, 3}, {3, 0}});
    CHECK(je.staircase == oracle_staircase(j, 4, 4));
    CHECK(je.exhausted);
    const auto ee = minimal_orders(e, 4, 4);
    CHECK(ee.staircase == std::vector<OrderPair>{{1, 1}, {2, 0}, {0, 3}});
    CHECK(ee.staircase == oracle_staircase(e, 4, 4));
    CHECK(ee.search_bounds == OrderPair{4, 4});
    CHECK(ee.evaluations < 25);
    const auto id = minimal_orders(MultiOperator::identity(1, 2), 3, 3);
    CHECK(id.staircase == std::vector<OrderPair>{{0, 1}, {1, 0}});
}

TEST_CASE("random tuple within small bounds is not exhausted") {
    const auto r = random_commuting_tuple(2, 4, 3);
    const auto res = minimal_orders(r, 1, 1);
    CHECK_FALSE(res.exhausted);
    CHECK(res.staircase.empty());
}

TEST_CASE("minimal orders is an antichain closed upward") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = seed % 2 == 0 ? square_zero_tuple(2, 3 + seed % 3, seed) : spherical_normal_tuple(2, 3, seed);
        const auto res = minimal_orders(r, 5, 5);
        for (const auto& a : res.staircase) {
            for (const auto& b : res.staircase) {
                if (a != b) {
                    CHECK_FALSE((a.first <= b.first && a.second <= b.second));
                }
            }
            CHECK(is_isosymmetric(r, a.first + 1, a.second + 2).holds);
        }
    }
}

TEST_CASE("indeterminate band near the tolerance") {
    const auto near = testing::single(ComplexMatrix{{1.0 + 1e-7}});
    const auto v = is_m_isometric(near, 1);
    CHECK_FALSE(v.holds);
    CHECK(v.indeterminate);
    const auto close = testing::single(ComplexMatrix{{1.0 + 1e-10}});
    CHECK(is_m_isometric(close, 1).holds);
    const auto far = testing::single(ComplexMatrix{{2.0}});
    CHECK_FALSE(is_m_isometric(far, 1).indeterminate);
}

TEST_CASE("order preconditions") {
    const auto id = MultiOperator::identity(1, 2);
    CHECK_THROWS_AS(is_m_isometric(id, 0), InvalidParams);
    CHECK_THROWS_AS(is_n_symmetric(id, 0), InvalidParams);
    CHECK_THROWS_AS(is_isosymmetric(id, 0, 0), InvalidParams);
    CHECK_THROWS_AS(minimal_orders(id, max_lattice_order + 1, 1), InvalidParams);
}

TEST_CASE("defect family rank of the strict 3-isometry") {
    const auto j = testing::single(testing::jordan2());
    const auto fr = defect_family_rank(j, 3, 1, FamilyDirection::vary_m);
    CHECK(fr.rank == 3);
    CHECK(fr.size == 3);
    CHECK(fr.independent);
    CHECK(fr.class_hypothesis);
    // Lambda_{2,1}(J) = 0, so the n - 1 = 1 family has no strictness.
    CHECK_THROWS_AS(defect_family_rank(j, 3, 2, FamilyDirection::vary_m), HypothesisUnmet);
}

TEST_CASE("defect family rank of a strict 3-symmetry") {
    const auto t = testing::single(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}});
    CHECK(is_n_symmetric(t, 3).holds);
    CHECK_FALSE(is_n_symmetric(t, 2).holds);
    const auto fr = defect_family_rank(t, 1, 3, FamilyDirection::vary_n);
    CHECK(fr.rank == 3);
    CHECK(fr.independent);
    CHECK(fr.class_hypothesis);
}

TEST_CASE("nilpotency order") {
    CHECK(nilpotency_order(MultiOperator::zero(2, 3)) == 1u);
    CHECK(nilpotency_order(testing::single(shift_block(4, 3))) == 3u);
    CHECK_FALSE(nilpotency_order(MultiOperator::identity(1, 2)).has_value());
    for (unsigned q = 1; q <= 4; ++q) {
        CHECK(nilpotency_order(nilpotent_tuple(2, 5, q, 17 + q, true)) == q);
    }
}
