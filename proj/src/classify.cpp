#include "isosym/classify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "isosym/combinatorics.hpp"
#include "isosym/errors.hpp"

namespace isosym {

std::string_view to_string(Property p) noexcept {
    switch (p) {
    case Property::m_isometric:
        return "m_isometric";
    case Property::n_symmetric:
        return "n_symmetric";
    case Property::mn_isosymmetric:
        return "mn_isosymmetric";
    }
    return "?";
}

std::string_view to_string(FamilyDirection d) noexcept {
    return d == FamilyDirection::vary_m ? "vary_m" : "vary_n";
}

ClassVerdict verdict_from(Property property, const DefectReport& report) {
    ClassVerdict v;
    v.property = property;
    v.orders = report.orders;
    v.defect_norm = report.norm;
    v.tolerance = report.tolerance_used;
    v.holds = report.norm <= report.tolerance_used;
    v.indeterminate = !v.holds && report.norm <= 10.0 * report.tolerance_used;
    return v;
}

ClassVerdict is_m_isometric(const MultiOperator& r, unsigned m, double tau) {
    if (m < 1) {
        throw InvalidParams("is_m_isometric: m must be at least 1");
    }
    return verdict_from(Property::m_isometric, defect_M(r, m, tau));
}

ClassVerdict is_n_symmetric(const MultiOperator& r, unsigned n, double tau) {
    if (n < 1) {
        throw InvalidParams("is_n_symmetric: n must be at least 1");
    }
    return verdict_from(Property::n_symmetric, defect_S(r, n, tau));
}

ClassVerdict is_isosymmetric(const MultiOperator& r, unsigned m, unsigned n, double tau) {
    if (m + n < 1) {
        throw InvalidParams("is_isosymmetric: m + n must be at least 1");
    }
    return verdict_from(Property::mn_isosymmetric, defect_Lambda(r, m, n, tau));
}

MinimalOrders minimal_orders(const MultiOperator& r, unsigned m_max, unsigned n_max, double tau) {
    if (m_max > max_lattice_order || n_max > max_lattice_order) {
        throw InvalidParams("minimal_orders: bounds exceed " + std::to_string(max_lattice_order));
    }
    MinimalOrders out;
    out.search_bounds = {m_max, n_max};
    auto dominated = [&](unsigned m, unsigned n) {
        return std::any_of(out.staircase.begin(), out.staircase.end(),
                           [&](const OrderPair& z) { return m >= z.first && n >= z.second; });
    };

    for (unsigned s = 0; s <= m_max + n_max; ++s) {
        std::vector<OrderPair> cells;
        for (unsigned m = 0; m <= std::min(s, m_max); ++m) {
            const unsigned n = s - m;
            if (n <= n_max && !dominated(m, n)) {
                cells.emplace_back(m, n);
            }
        }
        std::vector<char> zero(cells.size(), 0);
        std::vector<std::exception_ptr> failures(cells.size());
        const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            try {
                zero[idx] = defect_Lambda(r, cells[idx].first, cells[idx].second, tau).is_zero ? 1 : 0;
            } catch (...) {
                failures[idx] = std::current_exception();
            }
        }
        for (const auto& f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
        out.evaluations += cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (zero[i] != 0) {
                out.staircase.push_back(cells[i]);
            }
        }
    }
    out.exhausted = !out.staircase.empty();
    return out;
}

FamilyRank defect_family_rank(const MultiOperator& r, unsigned m, unsigned n, FamilyDirection direction,
                              double tau, double tol_rank) {
    if (m < 1 || n < 1) {
        throw InvalidParams("defect_family_rank: m and n must be at least 1");
    }
    if (defect_Lambda(r, m - 1, n - 1, tau).is_zero) {
        throw HypothesisUnmet("defect_family_rank: Lambda_{" + std::to_string(m - 1) + "," + std::to_string(n - 1) +
                              "} is zero");
    }
    std::vector<ComplexMatrix> family;
    FamilyRank out;
    if (direction == FamilyDirection::vary_m) {
        for (unsigned k = 0; k < m; ++k) {
            family.push_back(defect_Lambda(r, k, n - 1, tau).matrix);
        }
        out.class_hypothesis = is_m_isometric(r, m, tau).holds;
    } else {
        for (unsigned l = 0; l < n; ++l) {
            family.push_back(defect_Lambda(r, m - 1, l, tau).matrix);
        }
        out.class_hypothesis = is_n_symmetric(r, n, tau).holds;
    }
    out.size = family.size();
    out.rank = matrix_rank(family, tol_rank);
    out.independent = out.rank == out.size;
    return out;
}

std::optional<unsigned> nilpotency_order(const MultiOperator& q, double tau) {
    // Powers of degree q are products of powers of degree q - 1, so keep the
    // previous layer of monomials instead of recomputing them.
    std::vector<ComplexMatrix> layer{ComplexMatrix::identity(q.dim())};
    std::vector<MultiIndex> indices{MultiIndex::zero(q.d())};
    for (unsigned order = 1; order <= q.dim(); ++order) {
        std::vector<ComplexMatrix> next;
        std::vector<MultiIndex> next_indices = multi_indices(q.d(), order);
        for (const auto& alpha : next_indices) {
            // alpha - e_j for its first nonzero j is in the previous layer.
            std::size_t j = 0;
            while (alpha[j] == 0) {
                ++j;
            }
            auto lower = alpha.components();
            --lower[j];
            const auto it = std::lower_bound(indices.begin(), indices.end(), MultiIndex(lower));
            next.push_back(layer[static_cast<std::size_t>(it - indices.begin())] * q[j]);
        }
        const double bound = tau * std::pow(1.0 + q.max_norm(), order) * static_cast<double>(q.dim());
        if (std::all_of(next.begin(), next.end(), [&](const ComplexMatrix& m) { return fro_norm(m) <= bound; })) {
            return order;
        }
        layer = std::move(next);
        indices = std::move(next_indices);
    }
    return std::nullopt;
}

} // namespace isosym
