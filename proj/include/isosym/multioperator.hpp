#pragma once

#include <cstddef>
#include <vector>

#include "isosym/matrix.hpp"

namespace isosym {

inline constexpr double default_tol_comm = 1e-10;

/// Relative commutator residual |AB - BA| / ((1 + |A|)(1 + |B|)).
double relative_commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ordered tuple (R_1, ..., R_d) of pairwise-commuting square matrices of one
/// dimension.
class MultiOperator {
public:
    enum class Validation { checked, unchecked };

    MultiOperator() = default;

    /// Throws DimensionMismatch for inconsistent shapes and CommutationViolated
    /// when some pair fails the relative commutator bound tol_comm. The
    /// unchecked form skips only the commutation test; it exists to feed
    /// deliberately broken inputs to consistency checks.
    explicit MultiOperator(std::vector<ComplexMatrix> ops, Validation validation = Validation::checked,
                           double tol_comm = default_tol_comm);

    static MultiOperator identity(std::size_t d, std::size_t dim);
    static MultiOperator zero(std::size_t d, std::size_t dim);

    std::size_t d() const noexcept { return ops_.size(); }
    std::size_t dim() const noexcept { return ops_.empty() ? 0 : ops_.front().rows(); }

    const ComplexMatrix& operator[](std::size_t j) const noexcept { return ops_[j]; }
    const std::vector<ComplexMatrix>& matrices() const noexcept { return ops_; }

    auto begin() const noexcept { return ops_.begin(); }
    auto end() const noexcept { return ops_.end(); }

    /// Largest relative commutator over all pairs i < j.
    double commutation_residual() const;

    /// max_j |R_j|_F
    double max_norm() const noexcept;

    /// (R_1*, ..., R_d*); commutes whenever the tuple does.
    MultiOperator adjoint() const;

    /// Component-wise sum; the operands must be mutually commuting for the
    /// result to be a valid tuple.
    friend MultiOperator operator+(const MultiOperator& a, const MultiOperator& b);

    /// Leading principal block of every component.
    MultiOperator leading_block(std::size_t n, Validation validation = Validation::checked) const;

    friend bool operator==(const MultiOperator&, const MultiOperator&) = default;

private:
    std::vector<ComplexMatrix> ops_;
};

/// Largest relative residual of [R_j, Q_i] and [R_j, Q_i*] over all i, j.
double cross_commutation_residual(const MultiOperator& r, const MultiOperator& q);

} // namespace isosym
