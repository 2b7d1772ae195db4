#include "isosym/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isosym/classify.hpp"
#include "isosym/errors.hpp"

namespace isosym {

namespace {

ComplexMatrix shifted(const ComplexMatrix& c, Scalar lambda) {
    ComplexMatrix out = c;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        out(i, i) -= lambda;
    }
    return out;
}

double smallest_singular_value(const ComplexMatrix& m) {
    const auto s = singular_values(m);
    return s.empty() ? 0.0 : s.back();
}

void descend(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& w, double tol,
             std::vector<ComplexMatrix>& leaves) {
    if (ops.empty()) {
        leaves.push_back(w);
        return;
    }
    const double radius = cluster_tol * (1.0 + fro_norm(ops.front()));
    for (const auto& cluster : invariant_subspaces(ops.front(), radius)) {
        const auto& v = cluster.basis;
        const auto vt = adjoint(v);
        std::vector<ComplexMatrix> rest;
        for (std::size_t j = 1; j < ops.size(); ++j) {
            const auto cv = ops[j] * v;
            auto compressed = vt * cv;
            const double leak = fro_norm(cv - v * compressed);
            const double bound = 10.0 * tol * (1.0 + fro_norm(ops[j]));
            if (leak > bound) {
                throw InvarianceViolation("joint_point_spectrum: eigenspace not invariant, leak " +
                                          sci(leak) + " > " + sci(bound));
            }
            rest.push_back(std::move(compressed));
        }
        descend(rest, w * v, tol, leaves);
    }
}

bool mu_less(const Vector& a, const Vector& b) {
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (a[l].real() != b[l].real()) {
            return a[l].real() < b[l].real();
        }
        if (a[l].imag() != b[l].imag()) {
            return a[l].imag() < b[l].imag();
        }
    }
    return false;
}

void require_isosymmetric(const MultiOperator& r, unsigned m, unsigned n, const char* who) {
    if (!is_isosymmetric(r, m, n).holds) {
        throw HypothesisUnmet(std::string(who) + ": tuple is not (" + std::to_string(m) + "," + std::to_string(n) +
                              ")-isosymmetric");
    }
}

} // namespace

std::vector<JointEigenpair> joint_point_spectrum(const MultiOperator& r, double tol) {
    if (r.dim() > max_spectrum_dim) {
        throw TooLarge("joint_point_spectrum: dim " + std::to_string(r.dim()) + " exceeds " +
                       std::to_string(max_spectrum_dim));
    }
    std::vector<ComplexMatrix> leaves;
    descend(r.matrices(), ComplexMatrix::identity(r.dim()), tol, leaves);

    const double bound = tol * (1.0 + r.max_norm());
    std::vector<JointEigenpair> out;
    for (const auto& w : leaves) {
        JointEigenpair pair;
        const auto wt = adjoint(w);
        const auto k = w.cols();
        // Compressions stacked as rows; their common null space holds the
        // eigenvectors inside this subspace.
        ComplexMatrix stacked(r.d() * k, k);
        double stacked_scale = 1.0;
        for (std::size_t l = 0; l < r.d(); ++l) {
            const auto compressed = wt * (r[l] * w);
            Scalar trace(0.0, 0.0);
            for (std::size_t i = 0; i < k; ++i) {
                trace += compressed(i, i);
            }
            const Scalar mu = trace / static_cast<double>(k);
            pair.mu.push_back(mu);
            const auto centred = shifted(compressed, mu);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t c = 0; c < k; ++c) {
                    stacked(l * k + i, c) = centred(i, c);
                }
            }
            stacked_scale += fro_norm(compressed);
        }
        auto coords = null_space_below(stacked, tol * stacked_scale);
        if (coords.empty()) {
            coords.push_back(smallest_singular_vector(stacked));
        }
        const auto vectors = w * ComplexMatrix::from_columns(coords, k);
        for (std::size_t l = 0; l < r.d(); ++l) {
            const auto rv = r[l] * vectors;
            for (std::size_t c = 0; c < vectors.cols(); ++c) {
                Vector res(vectors.rows());
                for (std::size_t i = 0; i < vectors.rows(); ++i) {
                    res[i] = rv(i, c) - pair.mu[l] * vectors(i, c);
                }
                pair.residual = std::max(pair.residual, vector_norm(res));
            }
        }
        for (std::size_t c = 0; c < vectors.cols(); ++c) {
            pair.basis.push_back(vectors.column_vector(c));
        }
        if (!(pair.residual <= bound)) {
            throw ConvergenceFailure("joint_point_spectrum: residual " + sci(pair.residual) +
                                     " exceeds " + sci(bound));
        }
        out.push_back(std::move(pair));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return mu_less(a.mu, b.mu); });
    return out;
}

SpectralClassification classify_point(const Vector& mu, double tol) {
    SpectralClassification c;
    c.mu = mu;
    Scalar sum(0.0, 0.0);
    for (const auto& z : mu) {
        sum += z;
    }
    c.sphere_gap = std::abs(vector_norm(mu) - 1.0);
    c.imag_sum = std::abs(sum.imag());
    c.on_sphere = c.sphere_gap <= tol;
    c.real_sum = c.imag_sum <= tol;
    c.compliant = c.on_sphere || c.real_sum;
    return c;
}

std::vector<SpectralClassification> classify_points(const std::vector<JointEigenpair>& spectrum, double tol) {
    std::vector<SpectralClassification> out;
    for (const auto& pair : spectrum) {
        out.push_back(classify_point(pair.mu, tol));
    }
    return out;
}

std::vector<SpectralClassification> classify_spectrum(const MultiOperator& r, unsigned m, unsigned n, double tol) {
    require_isosymmetric(r, m, n, "classify_spectrum");
    return classify_points(joint_point_spectrum(r), tol);
}

std::string_view gate_status(const OrthogonalityCheck& c) noexcept {
    if (c.required_orthogonal) {
        return "asserted";
    }
    return c.near_gate ? "near-gate, unasserted" : "not required";
}

std::vector<OrthogonalityCheck> check_orthogonality(const std::vector<JointEigenpair>& spectrum, double tol) {
    std::vector<OrthogonalityCheck> out;
    for (std::size_t a = 0; a < spectrum.size(); ++a) {
        for (std::size_t b = a + 1; b < spectrum.size(); ++b) {
            const auto& x = spectrum[a];
            const auto& y = spectrum[b];
            OrthogonalityCheck c;
            c.first = a;
            c.second = b;
            c.mu_first = x.mu;
            c.mu_second = y.mu;
            Scalar product(0.0, 0.0);
            Scalar difference(0.0, 0.0);
            for (std::size_t l = 0; l < x.mu.size(); ++l) {
                product += x.mu[l] * std::conj(y.mu[l]);
                difference += x.mu[l] - std::conj(y.mu[l]);
            }
            c.gate_product = std::abs(product - 1.0);
            c.gate_sum = std::abs(difference);
            const auto bx = ComplexMatrix::from_columns(x.basis, x.basis.front().size());
            const auto by = ComplexMatrix::from_columns(y.basis, y.basis.front().size());
            c.gram_norm = fro_norm(adjoint(bx) * by);
            c.required_orthogonal = c.gate_product > 10.0 * tol && c.gate_sum > 10.0 * tol;
            c.near_gate = !c.required_orthogonal && c.gate_product > tol && c.gate_sum > tol;
            c.compliant = !c.required_orthogonal || c.gram_norm <= tol;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<OrthogonalityCheck> check_orthogonality(const MultiOperator& r, unsigned m, unsigned n, double tol) {
    require_isosymmetric(r, m, n, "check_orthogonality");
    return check_orthogonality(joint_point_spectrum(r, tol), tol);
}

ZeroCoordinateReport zero_coordinate_report(const MultiOperator& r, const std::vector<JointEigenpair>& spectrum,
                                            double tol) {
    ZeroCoordinateReport report;
    const auto a = adjoint(op_sum(r));
    const double a_scale = 1.0 + fro_norm(a);
    for (const auto& pair : spectrum) {
        Scalar product(1.0, 0.0);
        Scalar sum(0.0, 0.0);
        for (const auto& z : pair.mu) {
            product *= z;
            sum += z;
        }
        if (std::abs(product) > tol) {
            continue;
        }
        ZeroCoordinatePoint p;
        p.mu = pair.mu;
        p.product = product;
        p.sum = sum;
        p.sum_gap = smallest_singular_value(shifted(a, sum));
        p.consistent = p.sum_gap <= tol * a_scale;

        ComplexMatrix weighted(r.dim(), r.dim());
        double weighted_scale = 1.0;
        for (std::size_t l = 0; l < r.d(); ++l) {
            weighted += pair.mu[l] * adjoint(r[l]);
            weighted_scale += std::abs(pair.mu[l]) * fro_norm(r[l]);
        }
        p.unit_gap = smallest_singular_value(shifted(weighted, 1.0));
        p.unit_factor_singular = p.unit_gap <= tol * weighted_scale;

        report.consistent = report.consistent && p.consistent;
        report.points.push_back(std::move(p));
    }
    return report;
}

ZeroCoordinateReport check_zero_coordinate_exclusion(const MultiOperator& r, unsigned m, unsigned n, double tol) {
    require_isosymmetric(r, m, n, "check_zero_coordinate_exclusion");
    return zero_coordinate_report(r, joint_point_spectrum(r, tol), tol);
}

} // namespace isosym
