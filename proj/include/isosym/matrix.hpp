#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isosym {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

/// Dense row-major complex matrix. Value type; every operation returns a new
/// matrix and never mutates its arguments.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
    static ComplexMatrix diagonal(std::span<const Scalar> diag);
    /// Column matrix holding v.
    static ComplexMatrix column(std::span<const Scalar> v);
    /// Matrix whose columns are the given vectors, all of equal length.
    static ComplexMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

    std::span<const Scalar> entries() const noexcept { return entries_; }
    std::span<Scalar> entries() noexcept { return entries_; }

    Vector column_vector(std::size_t j) const;
    /// Leading principal block of size n.
    ComplexMatrix leading_block(std::size_t n) const;

    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Scalar s) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Scalar s, ComplexMatrix a);
/// Same as matmul(a, b).
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Matrix product. Rows are distributed over OpenMP threads for large
/// operands; every entry is accumulated in the same order as
/// matmul_reference, so both produce bit-identical results.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Serial triple loop, kept as the reference for matmul.
ComplexMatrix matmul_reference(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: result((i*p+k),(j*q+l)) = a(i,j) * b(k,l), p x q = shape of b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double fro_norm(const ComplexMatrix& m) noexcept;

/// a*b - b*a
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& m, double tol);

double vector_norm(std::span<const Scalar> v) noexcept;

struct Eigenpair {
    Scalar value;
    Vector vector; // unit 2-norm
};

inline constexpr double default_tol_eig = 1e-9;
inline constexpr double default_tol_rank = 1e-9;

/// Eigenvalues with algebraic multiplicity plus one unit eigenvector each.
/// Every pair satisfies |Mv - lambda v| <= tol_eig * (1 + |M|_F); a pair that
/// does not raises ConvergenceFailure, as does a solver that does not converge.
std::vector<Eigenpair> eigenpairs(const ComplexMatrix& m, double tol_eig = default_tol_eig);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Orthonormal basis of the numerical null space. Singular values above
/// tol_rank * sigma_max count towards the rank.
std::vector<Vector> null_space(const ComplexMatrix& m, double tol_rank = default_tol_rank);

/// Orthonormal basis for the span of right singular vectors whose singular
/// values are at most `threshold` (an absolute bound).
std::vector<Vector> null_space_below(const ComplexMatrix& m, double threshold);

/// Right singular vector of the smallest singular value.
Vector smallest_singular_vector(const ComplexMatrix& m);

struct InvariantSubspace {
    /// Mean of the eigenvalues in the group.
    Scalar centre;
    /// n x k orthonormal basis, k the number of eigenvalues in the group.
    ComplexMatrix basis;
};

/// Groups the eigenvalues by single linkage within `radius` and returns, for
/// each group, the invariant subspace it spans. Built from a complex Schur
/// form reordered by adjacent swaps, so a split Jordan block yields its whole
/// generalized eigenspace. Throws ConvergenceFailure if the Schur solver does
/// not converge.
std::vector<InvariantSubspace> invariant_subspaces(const ComplexMatrix& m, double radius);

/// Numerical rank of the matrices flattened into rows of a stacked matrix.
std::size_t matrix_rank(const std::vector<ComplexMatrix>& family, double tol_rank = default_tol_rank);

} // namespace isosym
