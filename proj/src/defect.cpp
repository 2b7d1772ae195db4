#include "isosym/defect.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "isosym/combinatorics.hpp"
#include "isosym/errors.hpp"

namespace isosym {

namespace {

/// Lazily grown ladder X^0, X^1, ... of one matrix.
class PowerLadder {
public:
    explicit PowerLadder(ComplexMatrix base) : base_(std::move(base)) {
        powers_.push_back(ComplexMatrix::identity(base_.rows()));
    }

    const ComplexMatrix& power(unsigned k) {
        while (powers_.size() <= k) {
            powers_.push_back(matmul(powers_.back(), base_));
        }
        return powers_[k];
    }

private:
    ComplexMatrix base_;
    std::vector<ComplexMatrix> powers_;
};

/// Power ladders of a tuple: its sums A = sum R*, B = sum R and every
/// component and adjoint component.
class TuplePowers {
public:
    explicit TuplePowers(const MultiOperator& r) : dim_(r.dim()), sum_adj_(adjoint(op_sum(r))), sum_(op_sum(r)) {
        for (const auto& m : r) {
            comp_.emplace_back(m);
            comp_adj_.emplace_back(adjoint(m));
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    const ComplexMatrix& sum_adj_power(unsigned k) { return sum_adj_.power(k); }
    const ComplexMatrix& sum_power(unsigned k) { return sum_.power(k); }

    /// R^g = R_1^g_1 ... R_d^g_d
    ComplexMatrix monomial(const MultiIndex& g) {
        ComplexMatrix out = ComplexMatrix::identity(dim_);
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j] > 0) {
                out = matmul(out, comp_[j].power(g[j]));
            }
        }
        return out;
    }

    /// R*^g = R_1*^g_1 ... R_d*^g_d
    ComplexMatrix adjoint_monomial(const MultiIndex& g) {
        ComplexMatrix out = ComplexMatrix::identity(dim_);
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j] > 0) {
                out = matmul(out, comp_adj_[j].power(g[j]));
            }
        }
        return out;
    }

private:
    std::size_t dim_;
    PowerLadder sum_adj_;
    PowerLadder sum_;
    std::vector<PowerLadder> comp_;
    std::vector<PowerLadder> comp_adj_;
};

double sign(unsigned exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

// Sign of a term, or +1 everywhere when evaluating magnitudes.
enum class Signs { alternating, absolute };

double term_sign(Signs signs, unsigned exponent) { return signs == Signs::absolute ? 1.0 : sign(exponent); }

void check_order(unsigned order, const char* what) {
    if (order > max_defect_order) {
        throw InvalidParams(std::string(what) + ": order " + std::to_string(order) + " exceeds " +
                            std::to_string(max_defect_order));
    }
}

ComplexMatrix s_matrix(TuplePowers& p, unsigned l, Signs signs = Signs::alternating) {
    ComplexMatrix out(p.dim(), p.dim());
    for (unsigned k = 0; k <= l; ++k) {
        const double c = term_sign(signs, l - k) * static_cast<double>(binomial(l, k));
        out += c * matmul(p.sum_adj_power(k), p.sum_power(l - k));
    }
    return out;
}

// sum_k (-1)^(l-k) C(l,k) sum_{|g|=k} (k!/g!) R*^g X R^g
ComplexMatrix isometric_sandwich(TuplePowers& p, std::size_t d, unsigned l, const ComplexMatrix& middle,
                                 Signs signs = Signs::alternating) {
    ComplexMatrix out(p.dim(), p.dim());
    for (unsigned k = 0; k <= l; ++k) {
        const double outer = term_sign(signs, l - k) * static_cast<double>(binomial(l, k));
        for (const auto& g : multi_indices(d, k)) {
            const double c = outer * static_cast<double>(multinomial_weight(g));
            out += c * matmul(matmul(p.adjoint_monomial(g), middle), p.monomial(g));
        }
    }
    return out;
}

// sum_k (-1)^(n-k) C(n,k) A^k X B^(n-k)
ComplexMatrix symmetric_sandwich(TuplePowers& p, unsigned n, const ComplexMatrix& middle,
                                 Signs signs = Signs::alternating) {
    ComplexMatrix out(p.dim(), p.dim());
    for (unsigned k = 0; k <= n; ++k) {
        const double c = term_sign(signs, n - k) * static_cast<double>(binomial(n, k));
        out += c * matmul(matmul(p.sum_adj_power(k), middle), p.sum_power(n - k));
    }
    return out;
}

DefectReport make_report(DefectKind kind, std::vector<unsigned> orders, ComplexMatrix matrix, double tolerance) {
    DefectReport rep;
    rep.kind = kind;
    rep.orders = std::move(orders);
    rep.norm = fro_norm(matrix);
    rep.matrix = std::move(matrix);
    rep.tolerance_used = tolerance;
    rep.is_zero = rep.norm <= tolerance;
    return rep;
}

} // namespace

std::string_view to_string(DefectKind kind) noexcept {
    switch (kind) {
    case DefectKind::S:
        return "S";
    case DefectKind::M:
        return "M";
    case DefectKind::Lambda:
        return "Lambda";
    }
    return "?";
}

double defect_scale(const MultiOperator& r, unsigned m, unsigned n) {
    return std::pow(1.0 + r.max_norm(), 2.0 * (m + n)) * static_cast<double>(r.dim());
}

ComplexMatrix op_sum(const MultiOperator& r) {
    ComplexMatrix out(r.dim(), r.dim());
    for (const auto& m : r) {
        out += m;
    }
    return out;
}

double defect_magnitude(const MultiOperator& r, unsigned m, unsigned n) {
    check_order(m, "defect_magnitude");
    check_order(n, "defect_magnitude");
    std::vector<ComplexMatrix> abs_ops;
    for (const auto& op : r) {
        ComplexMatrix a(op.rows(), op.cols());
        for (std::size_t i = 0; i < op.rows(); ++i) {
            for (std::size_t j = 0; j < op.cols(); ++j) {
                a(i, j) = std::abs(op(i, j));
            }
        }
        abs_ops.push_back(std::move(a));
    }
    TuplePowers p(MultiOperator(std::move(abs_ops), MultiOperator::Validation::unchecked));
    const auto id = ComplexMatrix::identity(r.dim());
    const auto mm = isometric_sandwich(p, r.d(), m, id, Signs::absolute);
    return fro_norm(symmetric_sandwich(p, n, mm, Signs::absolute));
}

DefectReport defect_S(const MultiOperator& r, unsigned l, double tau) {
    check_order(l, "defect_S");
    TuplePowers p(r);
    return make_report(DefectKind::S, {l}, s_matrix(p, l), tau * defect_scale(r, 0, l));
}

DefectReport defect_M(const MultiOperator& r, unsigned l, double tau) {
    check_order(l, "defect_M");
    TuplePowers p(r);
    return make_report(DefectKind::M, {l}, isometric_sandwich(p, r.d(), l, ComplexMatrix::identity(r.dim())),
                       tau * defect_scale(r, l, 0));
}

ComplexMatrix lambda_outer_symmetric(const MultiOperator& r, unsigned m, unsigned n) {
    check_order(m, "Lambda");
    check_order(n, "Lambda");
    TuplePowers p(r);
    const ComplexMatrix mm = isometric_sandwich(p, r.d(), m, ComplexMatrix::identity(r.dim()));
    return symmetric_sandwich(p, n, mm);
}

ComplexMatrix lambda_outer_isometric(const MultiOperator& r, unsigned m, unsigned n) {
    check_order(m, "Lambda");
    check_order(n, "Lambda");
    TuplePowers p(r);
    const ComplexMatrix sn = s_matrix(p, n);
    return isometric_sandwich(p, r.d(), m, sn);
}

DefectReport defect_Lambda(const MultiOperator& r, unsigned m, unsigned n, double tau) {
    ComplexMatrix first = lambda_outer_symmetric(r, m, n);
    const ComplexMatrix second = lambda_outer_isometric(r, m, n);
    const double tolerance = tau * defect_scale(r, m, n);
    const double gap = fro_norm(first - second);
    if (!(gap <= tolerance)) {
        throw FormsDisagree("Lambda_{" + std::to_string(m) + "," + std::to_string(n) + "}: forms differ by " +
                            sci(gap) + " > " + sci(tolerance) +
                            " (input tuple does not commute?)");
    }
    auto rep = make_report(DefectKind::Lambda, {m, n}, std::move(first), tolerance);
    rep.forms_gap = gap;
    return rep;
}

ComplexMatrix lambda_step_m(const MultiOperator& r, unsigned m, unsigned n, double tau) {
    const ComplexMatrix lam = defect_Lambda(r, m, n, tau).matrix;
    ComplexMatrix out = ComplexMatrix::zero(r.dim()) - lam;
    for (const auto& rj : r) {
        out += matmul(matmul(adjoint(rj), lam), rj);
    }
    return out;
}

ComplexMatrix lambda_step_n(const MultiOperator& r, unsigned m, unsigned n, double tau) {
    const ComplexMatrix lam = defect_Lambda(r, m, n, tau).matrix;
    const ComplexMatrix b = op_sum(r);
    return matmul(adjoint(b), lam) - matmul(lam, b);
}

ComplexMatrix perturbation_expansion(const MultiOperator& r, const MultiOperator& q, unsigned m, unsigned n,
                                     double tau, double tol_comm) {
    if (r.d() != q.d()) {
        throw ArityMismatch("perturbation_expansion: R and Q have different d");
    }
    if (r.dim() != q.dim()) {
        throw DimensionMismatch("perturbation_expansion: R and Q have different dimension");
    }
    check_order(m, "perturbation_expansion");
    check_order(n, "perturbation_expansion");
    const double cross = cross_commutation_residual(r, q);
    if (!(cross <= tol_comm)) {
        throw CrossCommutationViolated("perturbation_expansion: [R_j, Q_i] or [R_j, Q_i*] residual " +
                                       sci(cross) + " exceeds " + sci(tol_comm));
    }
    const std::size_t d = r.d();
    const MultiOperator t = r + q;
    TuplePowers tp(t);
    TuplePowers qp(q);
    TuplePowers rp(r);

    std::map<std::pair<unsigned, unsigned>, ComplexMatrix> lambda_r;
    std::vector<ComplexMatrix> s_q;
    for (unsigned j = 0; j <= n; ++j) {
        s_q.push_back(s_matrix(qp, j));
    }

    ComplexMatrix out(r.dim(), r.dim());
    for (unsigned j = 0; j <= n; ++j) {
        const double cj = static_cast<double>(binomial(n, j));
        for (unsigned a = 0; a <= m; ++a) {
            for (unsigned g = 0; a + g <= m; ++g) {
                const unsigned k = m - a - g;
                auto key = std::make_pair(k, n - j);
                auto it = lambda_r.find(key);
                if (it == lambda_r.end()) {
                    it = lambda_r.emplace(key, defect_Lambda(r, k, n - j, tau).matrix).first;
                }
                const ComplexMatrix core = matmul(it->second, s_q[j]);
                for (const auto& alpha : multi_indices(d, a)) {
                    const ComplexMatrix left_alpha = tp.adjoint_monomial(alpha);
                    const ComplexMatrix right_alpha = qp.monomial(alpha);
                    for (const auto& gamma : multi_indices(d, g)) {
                        const double c =
                            cj * static_cast<double>(trinomial_coeff(Trinomial{m, alpha, gamma, k}));
                        const ComplexMatrix left = matmul(left_alpha, qp.adjoint_monomial(gamma));
                        const ComplexMatrix right = matmul(rp.monomial(gamma), right_alpha);
                        out += c * matmul(matmul(left, core), right);
                    }
                }
            }
        }
    }
    return out;
}

} // namespace isosym
