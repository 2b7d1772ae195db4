#include "isosym/multioperator.hpp"

#include <algorithm>
#include <string>

#include "isosym/errors.hpp"

namespace isosym {

double relative_commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return fro_norm(commutator(a, b)) / ((1.0 + fro_norm(a)) * (1.0 + fro_norm(b)));
}

MultiOperator::MultiOperator(std::vector<ComplexMatrix> ops, Validation validation, double tol_comm)
    : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw InvalidParams("MultiOperator: tuple must have at least one component");
    }
    const std::size_t n = ops_.front().rows();
    if (n == 0) {
        throw DimensionMismatch("MultiOperator: dimension must be positive");
    }
    for (std::size_t j = 0; j < ops_.size(); ++j) {
        if (ops_[j].rows() != n || ops_[j].cols() != n) {
            throw DimensionMismatch("MultiOperator: component " + std::to_string(j + 1) + " is " +
                                    std::to_string(ops_[j].rows()) + "x" + std::to_string(ops_[j].cols()) +
                                    ", expected " + std::to_string(n) + "x" + std::to_string(n));
        }
        if (!ops_[j].all_finite()) {
            throw InvalidParams("MultiOperator: component " + std::to_string(j + 1) + " has non-finite entries");
        }
    }
    if (validation == Validation::checked) {
        const double residual = commutation_residual();
        if (!(residual <= tol_comm)) {
            throw CommutationViolated("MultiOperator: relative commutator " + sci(residual) +
                                      " exceeds " + sci(tol_comm));
        }
    }
}

MultiOperator MultiOperator::identity(std::size_t d, std::size_t dim) {
    return MultiOperator(std::vector<ComplexMatrix>(d, ComplexMatrix::identity(dim)));
}

MultiOperator MultiOperator::zero(std::size_t d, std::size_t dim) {
    return MultiOperator(std::vector<ComplexMatrix>(d, ComplexMatrix::zero(dim)));
}

double MultiOperator::commutation_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        for (std::size_t j = i + 1; j < ops_.size(); ++j) {
            worst = std::max(worst, relative_commutator(ops_[i], ops_[j]));
        }
    }
    return worst;
}

double MultiOperator::max_norm() const noexcept {
    double worst = 0.0;
    for (const auto& m : ops_) {
        worst = std::max(worst, fro_norm(m));
    }
    return worst;
}

MultiOperator MultiOperator::adjoint() const {
    std::vector<ComplexMatrix> out;
    out.reserve(ops_.size());
    for (const auto& m : ops_) {
        out.push_back(isosym::adjoint(m));
    }
    return MultiOperator(std::move(out), Validation::unchecked);
}

MultiOperator operator+(const MultiOperator& a, const MultiOperator& b) {
    if (a.d() != b.d()) {
        throw ArityMismatch("MultiOperator sum: d differs");
    }
    std::vector<ComplexMatrix> out;
    out.reserve(a.d());
    for (std::size_t j = 0; j < a.d(); ++j) {
        out.push_back(a[j] + b[j]);
    }
    return MultiOperator(std::move(out));
}

MultiOperator MultiOperator::leading_block(std::size_t n, Validation validation) const {
    std::vector<ComplexMatrix> out;
    out.reserve(ops_.size());
    for (const auto& m : ops_) {
        out.push_back(m.leading_block(n));
    }
    return MultiOperator(std::move(out), validation);
}

double cross_commutation_residual(const MultiOperator& r, const MultiOperator& q) {
    double worst = 0.0;
    for (const auto& rj : r) {
        for (const auto& qi : q) {
            worst = std::max(worst, relative_commutator(rj, qi));
            worst = std::max(worst, relative_commutator(rj, adjoint(qi)));
        }
    }
    return worst;
}

} // namespace isosym
