#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "isosym/construct.hpp"
#include "isosym/defect.hpp"
#include "isosym/errors.hpp"
#include "oracle.hpp"

using namespace isosym;

namespace {

bool within_scale(const ComplexMatrix& a, const ComplexMatrix& b, const MultiOperator& r, unsigned m, unsigned n) {
    return fro_norm(a - b) <= default_tau * defect_scale(r, m, n);
}

// |a - b| against the rounding bound of the defect of this order.
double sharp(const ComplexMatrix& a, const ComplexMatrix& b, const MultiOperator& r, unsigned m, unsigned n) {
    return fro_norm(a - b) / (1.0 + defect_magnitude(r, m, n));
}

} // namespace

TEST_CASE("reference pair values") {
    const auto e = example_2_2_pair();
    CHECK(op_sum(e) == ComplexMatrix{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    const auto s1 = defect_S(e, 1);
    CHECK(s1.matrix == ComplexMatrix{{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    CHECK_FALSE(s1.is_zero);
    CHECK(s1.norm == doctest::Approx(std::sqrt(2.0)));
    const auto m1 = defect_M(e, 1);
    CHECK(m1.matrix == ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    CHECK_FALSE(m1.is_zero);
    const auto l11 = defect_Lambda(e, 1, 1);
    CHECK(l11.is_zero);
    CHECK(l11.norm == 0.0);
    CHECK(oracle::lambda(e, 1, 1) == ComplexMatrix::zero(3));
}

TEST_CASE("trivial tuples") {
    const auto id = MultiOperator::identity(1, 3);
    CHECK(defect_S(id, 1).is_zero);
    CHECK(defect_M(id, 1).is_zero);
    CHECK(defect_S(id, 0).matrix == ComplexMatrix::identity(3));
    CHECK(defect_M(id, 0).matrix == ComplexMatrix::identity(3));
    const auto zero = MultiOperator::zero(2, 3);
    CHECK(op_sum(zero) == ComplexMatrix::zero(3));
    for (unsigned m = 0; m <= 4; ++m) {
        CHECK(defect_Lambda(zero, m, 1).norm == 0.0);
    }
}

TEST_CASE("Lambda matches the superoperator oracle") {
    for (const auto& r : testing::random_tuples(60, 100)) {
        for (unsigned m = 0; m <= 3; ++m) {
            for (unsigned n = 0; n <= 3; ++n) {
                const auto got = defect_Lambda(r, m, n).matrix;
                const auto want = oracle::lambda(r, m, n);
                CHECK(within_scale(got, want, r, m, n));
                CHECK(sharp(got, want, r, m, n) <= 1e-12);
            }
        }
    }
}

TEST_CASE("both forms agree and the collapsed orders are S and M") {
    for (const auto& r : testing::random_tuples(200, 7)) {
        for (unsigned m = 0; m <= 3; ++m) {
            for (unsigned n = 0; n <= 3; ++n) {
                const auto a = lambda_outer_symmetric(r, m, n);
                const auto b = lambda_outer_isometric(r, m, n);
                CHECK(within_scale(a, b, r, m, n));
                CHECK(sharp(a, b, r, m, n) <= 1e-13);
            }
        }
        for (unsigned l = 0; l <= 3; ++l) {
            CHECK(within_scale(defect_Lambda(r, l, 0).matrix, defect_M(r, l).matrix, r, l, 0));
            CHECK(within_scale(defect_Lambda(r, 0, l).matrix, defect_S(r, l).matrix, r, 0, l));
        }
    }
}

TEST_CASE("structure: M is Hermitian, S_1 is anti-Hermitian, low orders") {
    for (const auto& r : testing::random_tuples(50, 40)) {
        for (unsigned l = 0; l <= 4; ++l) {
            const auto m = defect_M(r, l);
            CHECK(fro_norm(m.matrix - adjoint(m.matrix)) <= m.tolerance_used);
        }
        const auto s1 = defect_S(r, 1).matrix;
        CHECK(fro_norm(s1 + adjoint(s1)) <= 1e-13 * (1 + fro_norm(s1)));

        ComplexMatrix l10 = ComplexMatrix::zero(r.dim()) - ComplexMatrix::identity(r.dim());
        ComplexMatrix l01 = ComplexMatrix::zero(r.dim());
        for (const auto& op : r) {
            l10 += adjoint(op) * op;
            l01 += adjoint(op) - op;
        }
        CHECK(within_scale(defect_Lambda(r, 1, 0).matrix, l10, r, 1, 0));
        CHECK(within_scale(defect_Lambda(r, 0, 1).matrix, l01, r, 0, 1));

        // Lambda_{1,1} written out: A* M_1 - M_1 A with A = sum R.
        const auto a = op_sum(r);
        const auto expected = adjoint(a) * l10 - l10 * a;
        CHECK(within_scale(defect_Lambda(r, 1, 1).matrix, expected, r, 1, 1));
    }
}

TEST_CASE("one-step recurrences match the direct evaluation") {
    for (const auto& r : testing::random_tuples(200, 300)) {
        for (unsigned m = 0; m <= 3; ++m) {
            for (unsigned n = 0; n <= 3; ++n) {
                const auto up_m = defect_Lambda(r, m + 1, n).matrix;
                const auto up_n = defect_Lambda(r, m, n + 1).matrix;
                CHECK(within_scale(lambda_step_m(r, m, n), up_m, r, m + 1, n));
                CHECK(within_scale(lambda_step_n(r, m, n), up_n, r, m, n + 1));
                CHECK(sharp(lambda_step_m(r, m, n), up_m, r, m + 1, n) <= 1e-13);
                CHECK(sharp(lambda_step_n(r, m, n), up_n, r, m, n + 1) <= 1e-13);
            }
        }
    }
    const auto id = MultiOperator::identity(1, 2);
    CHECK(fro_norm(lambda_step_m(id, 0, 0)) == 0.0);
    CHECK(fro_norm(lambda_step_n(id, 0, 0)) == 0.0);
}

TEST_CASE("sharp residual separates exact zeros from loose ones") {
    // Negative control: on a generic tuple the sharp ratio of Lambda itself is
    // far above rounding even where the scaled test calls it zero.
    const auto r = random_commuting_tuple(2, 6, 5);
    const auto l = defect_Lambda(r, 3, 3);
    CHECK(l.norm / (1.0 + defect_magnitude(r, 3, 3)) > 1e-12);
    // The reference pair Lambda_{1,1} is an exact zero.
    const auto e = example_2_2_pair();
    CHECK(defect_Lambda(e, 1, 1).norm / (1.0 + defect_magnitude(e, 1, 1)) <= 1e-16);
}

TEST_CASE("scaled tuples: Lambda is (sum beta)^n times the base defect") {
    const std::vector<std::vector<double>> betas{{1.0}, {0.6, 0.8}, {0.48, 0.6, 0.64}, {0.6, -0.8}};
    for (const auto& beta : betas) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto base = random_commuting_tuple(1, 4, 50 + trial);
            const auto t = scaled_tuple({base[0], beta});
            double sum = 0.0;
            for (auto b : beta) {
                sum += b;
            }
            for (unsigned m = 0; m <= 3; ++m) {
                for (unsigned n = 0; n <= 3; ++n) {
                    ComplexMatrix want = defect_Lambda(base, m, n).matrix;
                    want *= std::pow(sum, n);
                    CHECK(within_scale(defect_Lambda(t, m, n).matrix, want, t, m, n));
                }
                CHECK(within_scale(defect_M(t, m).matrix, defect_M(base, m).matrix, t, m, 0));
            }
        }
    }
}

TEST_CASE("expansion under a commuting perturbation") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto d = 1 + seed % 3;
        const auto r = random_commuting_tuple(d, 3, seed);
        const auto dq = 2 + seed % 2;
        const auto q = nilpotent_tuple(d, dq, 1 + static_cast<unsigned>(seed % dq), seed + 1000, true);
        const auto [rr, qq] = tensor_parts(r, q);
        const auto sum = rr + qq;
        for (unsigned m = 0; m <= 3; ++m) {
            for (unsigned n = 0; n <= 3; ++n) {
                const auto direct = defect_Lambda(sum, m, n).matrix;
                const auto expanded = perturbation_expansion(rr, qq, m, n);
                CHECK(within_scale(expanded, direct, sum, m, n));
                CHECK(sharp(expanded, direct, sum, m, n) <= 1e-13);
            }
        }
    }
    const auto r = random_commuting_tuple(2, 4, 1);
    for (unsigned m = 0; m <= 3; ++m) {
        CHECK(fro_norm(perturbation_expansion(r, MultiOperator::zero(2, 4), m, 2) - defect_Lambda(r, m, 2).matrix) <=
              default_tau * defect_scale(r, m, 2));
    }
    const auto zero = MultiOperator::zero(2, 3);
    CHECK(perturbation_expansion(zero, zero, 0, 0) == ComplexMatrix::identity(3));
}

TEST_CASE("expansion rejects perturbations that do not cross-commute") {
    const auto r = example_2_2_pair();
    const ComplexMatrix n{{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    const MultiOperator q({n, ComplexMatrix::zero(3)});
    CHECK_THROWS_AS(perturbation_expansion(r, q, 1, 1), CrossCommutationViolated);
}

TEST_CASE("ascent window on zero cells") {
    const auto e = example_2_2_pair();
    const auto j = testing::single(testing::jordan2());
    for (const auto* r : {&e, &j}) {
        for (unsigned m = 0; m <= 3; ++m) {
            for (unsigned n = 0; n <= 3; ++n) {
                if (!defect_Lambda(*r, m, n).is_zero) {
                    continue;
                }
                for (unsigned dm = 0; dm <= 2; ++dm) {
                    for (unsigned dn = 0; dn <= 2; ++dn) {
                        const auto up = defect_Lambda(*r, m + dm, n + dn);
                        CHECK(up.is_zero);
                        CHECK(up.norm == 0.0);
                    }
                }
            }
        }
    }
}

TEST_CASE("inputs that break the forms identity") {
    const ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
    const ComplexMatrix b{{1.0, 0.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(MultiOperator({a, b}), CommutationViolated);
    const MultiOperator broken({a, b}, MultiOperator::Validation::unchecked);
    CHECK_THROWS_AS(defect_Lambda(broken, 1, 1), FormsDisagree);
    CHECK_NOTHROW(defect_Lambda(broken, 2, 0));
}

TEST_CASE("order limits") {
    const auto id = MultiOperator::identity(1, 2);
    CHECK_THROWS_AS(defect_S(id, max_defect_order + 1), InvalidParams);
    CHECK_THROWS_AS(defect_Lambda(id, 0, max_defect_order + 1), InvalidParams);
}
