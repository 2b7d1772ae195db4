#pragma once

#include <string_view>
#include <vector>

#include "isosym/matrix.hpp"
#include "isosym/multioperator.hpp"

namespace isosym {

enum class DefectKind { S, M, Lambda };

std::string_view to_string(DefectKind kind) noexcept;

/// Relative zero-test factor. A defect D of orders (m, n) counts as zero when
/// |D|_F <= tau * defect_scale(R, m, n).
inline constexpr double default_tau = 1e-8;

/// Highest order accepted by the defect evaluators.
inline constexpr unsigned max_defect_order = 20;

/// (1 + max_j |R_j|_F)^(2(m+n)) * dim: the worst-case growth of a defect
/// polynomial of degree 2(m+n) in the tuple entries.
double defect_scale(const MultiOperator& r, unsigned m, unsigned n);

/// |Lambda_{m,n}|_F evaluated on the entrywise moduli |R_j| with every sign
/// made positive. The rounding error of a computed Lambda_{m,n} is a modest
/// multiple of machine epsilon times this, so |Lambda| / magnitude is a
/// relative residual that does not degrade with the order the way
/// defect_scale does.
double defect_magnitude(const MultiOperator& r, unsigned m, unsigned n);

struct DefectReport {
    DefectKind kind = DefectKind::S;
    /// (l) for S and M, (m, n) for Lambda.
    std::vector<unsigned> orders;
    ComplexMatrix matrix;
    double norm = 0.0;
    double tolerance_used = 0.0;
    bool is_zero = false;
    /// Lambda only: |outer-symmetric form - outer-isometric form|_F.
    double forms_gap = 0.0;
};

/// R_1 + ... + R_d
ComplexMatrix op_sum(const MultiOperator& r);

/// S_l(R) = sum_k (-1)^(l-k) C(l,k) (sum R*)^k (sum R)^(l-k)
DefectReport defect_S(const MultiOperator& r, unsigned l, double tau = default_tau);

/// M_l(R) = sum_k (-1)^(l-k) C(l,k) sum_{|g|=k} (k!/g!) R*^g R^g
DefectReport defect_M(const MultiOperator& r, unsigned l, double tau = default_tau);

/// sum_k (-1)^(n-k) C(n,k) (sum R*)^k M_m(R) (sum R)^(n-k)
ComplexMatrix lambda_outer_symmetric(const MultiOperator& r, unsigned m, unsigned n);

/// sum_k (-1)^(m-k) C(m,k) sum_{|g|=k} (k!/g!) R*^g S_n(R) R^g
ComplexMatrix lambda_outer_isometric(const MultiOperator& r, unsigned m, unsigned n);

/// Lambda_{m,n}(R). Evaluates both expressions above and throws FormsDisagree
/// when they differ by more than the zero-test tolerance; the returned matrix
/// is the outer-symmetric form.
DefectReport defect_Lambda(const MultiOperator& r, unsigned m, unsigned n, double tau = default_tau);

/// sum_j R_j* Lambda_{m,n} R_j - Lambda_{m,n}; equals Lambda_{m+1,n}.
ComplexMatrix lambda_step_m(const MultiOperator& r, unsigned m, unsigned n, double tau = default_tau);

/// (sum R*) Lambda_{m,n} - Lambda_{m,n} (sum R); equals Lambda_{m,n+1}.
ComplexMatrix lambda_step_n(const MultiOperator& r, unsigned m, unsigned n, double tau = default_tau);

/// sum_j sum_{|a|+|g|+k=m} C(n,j) m!/(a! g! k!) (R+Q)*^a Q*^g Lambda_{k,n-j}(R) S_j(Q) R^g Q^a,
/// which equals Lambda_{m,n}(R + Q) when [R_j, Q_i] = [R_j, Q_i*] = 0.
/// Throws CrossCommutationViolated when that residual exceeds tol_comm.
ComplexMatrix perturbation_expansion(const MultiOperator& r, const MultiOperator& q, unsigned m, unsigned n,
                                     double tau = default_tau, double tol_comm = default_tol_comm);

} // namespace isosym
