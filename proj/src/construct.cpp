#include "isosym/construct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isosym/errors.hpp"
#include "isosym/random.hpp"

namespace isosym {

namespace {

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * adjoint(u); }

Vector random_unit_vector(Rng& rng, std::size_t n) {
    Vector v(n);
    for (auto& z : v) {
        z = rng.complex_normal();
    }
    const double norm = vector_norm(v);
    for (auto& z : v) {
        z /= norm;
    }
    return v;
}

} // namespace

MultiOperator scaled_tuple(const ScaledTupleSpec& spec) {
    if (spec.beta.empty()) {
        throw InvalidParams("scaled_tuple: beta is empty");
    }
    double sum = 0.0;
    for (double b : spec.beta) {
        sum += b * b;
    }
    if (!(std::abs(sum - 1.0) <= beta_norm_tol)) {
        throw BetaNotNormalized("scaled_tuple: sum of beta_j^2 is " + std::to_string(sum));
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(spec.beta.size());
    for (double b : spec.beta) {
        ops.push_back(Scalar(b, 0.0) * spec.base);
    }
    return MultiOperator(std::move(ops));
}

MultiOperator example_2_2_pair() {
    ComplexMatrix r1(3, 3);
    r1(1, 0) = 1.0;
    return MultiOperator({r1, ComplexMatrix::identity(3)});
}

std::pair<MultiOperator, MultiOperator> tensor_parts(const MultiOperator& r, const MultiOperator& q) {
    if (r.d() != q.d()) {
        throw ArityMismatch("tensor_sum: tuples have d = " + std::to_string(r.d()) + " and " + std::to_string(q.d()));
    }
    const auto ir = ComplexMatrix::identity(r.dim());
    const auto iq = ComplexMatrix::identity(q.dim());
    std::vector<ComplexMatrix> left;
    std::vector<ComplexMatrix> right;
    for (std::size_t k = 0; k < r.d(); ++k) {
        left.push_back(kron(r[k], iq));
        right.push_back(kron(ir, q[k]));
    }
    return {MultiOperator(std::move(left)), MultiOperator(std::move(right))};
}

MultiOperator tensor_sum(const MultiOperator& r, const MultiOperator& q) {
    const auto [left, right] = tensor_parts(r, q);
    return left + right;
}

std::pair<MultiOperator, MultiOperator> jordan_parts(const JordanAugmentSpec& spec) {
    if (spec.q == 0) {
        throw InvalidParams("jordan_augment: q must be positive");
    }
    const auto& a = spec.base_tuple;
    if (spec.mu.size() != a.d()) {
        throw ArityMismatch("jordan_augment: mu has " + std::to_string(spec.mu.size()) + " entries, tuple has d = " +
                            std::to_string(a.d()));
    }
    const auto shift = shift_block(spec.q, spec.q);
    const auto iq = ComplexMatrix::identity(spec.q);
    const auto ia = ComplexMatrix::identity(a.dim());
    std::vector<ComplexMatrix> diag;
    std::vector<ComplexMatrix> upper;
    for (std::size_t k = 0; k < a.d(); ++k) {
        diag.push_back(kron(iq, a[k]));
        upper.push_back(spec.mu[k] * kron(shift, ia));
    }
    return {MultiOperator(std::move(diag)), MultiOperator(std::move(upper))};
}

MultiOperator jordan_augment(const JordanAugmentSpec& spec) {
    const auto [r, q] = jordan_parts(spec);
    return r + q;
}

ComplexMatrix shift_block(std::size_t dim, unsigned q) {
    if (q == 0 || q > dim) {
        throw InvalidParams("shift_block: need 1 <= q <= dim");
    }
    ComplexMatrix n(dim, dim);
    for (std::size_t i = 0; i + 1 < q; ++i) {
        n(i, i + 1) = 1.0;
    }
    return n;
}

MultiOperator nilpotent_tuple(std::size_t d, std::size_t dim, unsigned q, std::uint64_t seed, bool mix) {
    if (d == 0) {
        throw InvalidParams("nilpotent_tuple: d must be positive");
    }
    if (q == 0 || q > dim) {
        throw InvalidParams("nilpotent_tuple: need 1 <= q <= dim");
    }
    Rng rng(seed);
    auto shift = shift_block(dim, q);
    if (mix) {
        shift = conjugate_by(random_unitary(rng, dim), shift);
    }
    std::vector<ComplexMatrix> powers{shift};
    for (unsigned p = 2; p < q; ++p) {
        powers.push_back(powers.back() * shift);
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix qj(dim, dim);
        for (unsigned p = 1; p < q; ++p) {
            qj += rng.complex_normal() * powers[p - 1];
        }
        ops.push_back(std::move(qj));
    }
    return MultiOperator(std::move(ops));
}

MultiOperator random_commuting_tuple(std::size_t d, std::size_t dim, std::uint64_t seed, bool mix) {
    if (d == 0 || dim == 0) {
        throw InvalidParams("random_commuting_tuple: d and dim must be positive");
    }
    if (dim > max_random_dim) {
        throw InvalidParams("random_commuting_tuple: dim exceeds " + std::to_string(max_random_dim));
    }
    Rng rng(seed);
    auto t = random_matrix(rng, dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    if (mix) {
        t = conjugate_by(random_unitary(rng, dim), t);
    }
    const std::size_t degree = std::min<std::size_t>(dim - 1, 3);
    std::vector<ComplexMatrix> powers{ComplexMatrix::identity(dim)};
    for (std::size_t p = 1; p <= degree; ++p) {
        powers.push_back(powers.back() * t);
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix rj(dim, dim);
        for (std::size_t p = 0; p <= degree; ++p) {
            rj += (rng.complex_normal() / static_cast<double>(p + 1)) * powers[p];
        }
        ops.push_back(std::move(rj));
    }
    return MultiOperator(std::move(ops));
}

MultiOperator diagonal_tuple(const std::vector<Vector>& diagonals) {
    std::vector<ComplexMatrix> ops;
    for (const auto& diag : diagonals) {
        ops.push_back(ComplexMatrix::diagonal(diag));
    }
    return MultiOperator(std::move(ops));
}

MultiOperator spherical_normal_tuple(std::size_t d, std::size_t dim, std::uint64_t seed) {
    if (d == 0 || dim == 0) {
        throw InvalidParams("spherical_normal_tuple: d and dim must be positive");
    }
    Rng rng(seed);
    std::vector<Vector> diagonals(d, Vector(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto point = random_unit_vector(rng, d);
        for (std::size_t j = 0; j < d; ++j) {
            diagonals[j][i] = point[j];
        }
    }
    const auto u = random_unitary(rng, dim);
    std::vector<ComplexMatrix> ops;
    for (const auto& diag : diagonals) {
        ops.push_back(conjugate_by(u, ComplexMatrix::diagonal(diag)));
    }
    return MultiOperator(std::move(ops));
}

MultiOperator hermitian_tuple(std::size_t d, std::size_t dim, std::uint64_t seed) {
    if (d == 0 || dim == 0) {
        throw InvalidParams("hermitian_tuple: d and dim must be positive");
    }
    Rng rng(seed);
    std::vector<Vector> diagonals(d, Vector(dim));
    for (auto& diag : diagonals) {
        for (auto& z : diag) {
            z = rng.normal();
        }
    }
    const auto u = random_unitary(rng, dim);
    std::vector<ComplexMatrix> ops;
    for (const auto& diag : diagonals) {
        auto m = conjugate_by(u, ComplexMatrix::diagonal(diag));
        // Symmetrize so the adjoint is bit-identical to the matrix.
        const auto mt = adjoint(m);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                m(i, k) = 0.5 * (m(i, k) + mt(i, k));
            }
        }
        ops.push_back(std::move(m));
    }
    return MultiOperator(std::move(ops));
}

MultiOperator square_zero_tuple(std::size_t d, std::size_t dim, std::uint64_t seed) {
    if (d < 2 || dim < 2) {
        throw InvalidParams("square_zero_tuple: need d >= 2 and dim >= 2");
    }
    Rng rng(seed);
    const auto u = random_unit_vector(rng, dim);
    auto v = random_unit_vector(rng, dim);
    Scalar dot(0.0, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        dot += std::conj(u[i]) * v[i];
    }
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] -= dot * u[i];
    }
    const double norm = vector_norm(v);
    for (auto& z : v) {
        z /= norm;
    }
    ComplexMatrix n(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            n(i, k) = u[i] * std::conj(v[k]);
        }
    }
    std::vector<ComplexMatrix> ops{n, ComplexMatrix::identity(dim)};
    for (std::size_t j = 2; j < d; ++j) {
        ops.push_back(ComplexMatrix::zero(dim));
    }
    return MultiOperator(std::move(ops));
}

} // namespace isosym
