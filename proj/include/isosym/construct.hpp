#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "isosym/matrix.hpp"
#include "isosym/multioperator.hpp"

namespace isosym {

struct ScaledTupleSpec {
    ComplexMatrix base;
    std::vector<double> beta;
};

/// Sum of beta_j^2 must equal 1 to this accuracy.
inline constexpr double beta_norm_tol = 1e-12;

/// R_j = beta_j * base. Throws BetaNotNormalized.
MultiOperator scaled_tuple(const ScaledTupleSpec& spec);

/// R_1 = E_21 (a single 1 in row 2, column 1) and R_2 = I, both 3 x 3.
MultiOperator example_2_2_pair();

/// Components kron(R_k, I) and kron(I, Q_k) kept apart. Each entry of a
/// product of the two is a single floating point product, so they commute
/// (with and without adjoints) exactly.
std::pair<MultiOperator, MultiOperator> tensor_parts(const MultiOperator& r, const MultiOperator& q);

/// kron(R_k, I_{Q.dim}) + kron(I_{R.dim}, Q_k). Throws ArityMismatch.
MultiOperator tensor_sum(const MultiOperator& r, const MultiOperator& q);

struct JordanAugmentSpec {
    MultiOperator base_tuple;
    std::vector<Scalar> mu;
    unsigned q = 1;
};

/// (kron(I_q, A_k), mu_k kron(N_q, I)) with N_q the q x q upper shift. The
/// second tuple is q-nilpotent. Throws InvalidParams for q == 0 and
/// ArityMismatch when mu has the wrong length.
std::pair<MultiOperator, MultiOperator> jordan_parts(const JordanAugmentSpec& spec);

/// q x q block upper bidiagonal: A_k on the diagonal, mu_k I above it.
MultiOperator jordan_augment(const JordanAugmentSpec& spec);

/// dim x dim matrix with a q x q Jordan shift in the leading block and zeros
/// elsewhere; nilpotent of index exactly q (q >= 1).
ComplexMatrix shift_block(std::size_t dim, unsigned q);

/// Q_j = sum_{p=1}^{q-1} c_jp N^p for N = shift_block(dim, q), optionally
/// conjugated by one random unitary. Q^a = 0 whenever |a| >= q.
/// Throws InvalidParams unless 1 <= q <= dim.
MultiOperator nilpotent_tuple(std::size_t d, std::size_t dim, unsigned q, std::uint64_t seed, bool mix = false);

inline constexpr std::size_t max_random_dim = 64;

/// R_j = p_j(T) for one random T with spectral radius about 1, p_j of degree
/// min(dim - 1, 3) with Gaussian coefficients. With `mix`, T is first
/// conjugated by a random unitary.
MultiOperator random_commuting_tuple(std::size_t d, std::size_t dim, std::uint64_t seed, bool mix = true);

/// R_j = diag(diagonals[j]).
MultiOperator diagonal_tuple(const std::vector<Vector>& diagonals);

/// U diag(lambda_j) U* where every joint eigenvalue (lambda_1i, ..., lambda_di)
/// is a unit vector of C^d. Normal and 1-isometric.
MultiOperator spherical_normal_tuple(std::size_t d, std::size_t dim, std::uint64_t seed);

/// U diag(x_j) U* with real x_j. Normal and 1-symmetric.
MultiOperator hermitian_tuple(std::size_t d, std::size_t dim, std::uint64_t seed);

/// (N, I, 0, ..., 0) with N = u v* for random u and v orthogonal to u, so N^2 = 0.
/// (1,1)-isosymmetric; the case dim = 3, u = e_2, v = e_1 is example_2_2_pair.
/// Requires d >= 2 and dim >= 2.
MultiOperator square_zero_tuple(std::size_t d, std::size_t dim, std::uint64_t seed);

} // namespace isosym
