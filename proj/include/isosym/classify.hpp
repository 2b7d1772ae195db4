#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "isosym/defect.hpp"
#include "isosym/multioperator.hpp"

namespace isosym {

enum class Property { m_isometric, n_symmetric, mn_isosymmetric };

std::string_view to_string(Property p) noexcept;

struct ClassVerdict {
    Property property = Property::mn_isosymmetric;
    std::vector<unsigned> orders;
    bool holds = false;
    /// Defect norm lies in (tolerance, 10 * tolerance]: too close to call strict.
    bool indeterminate = false;
    double defect_norm = 0.0;
    double tolerance = 0.0;
};

ClassVerdict verdict_from(Property property, const DefectReport& report);

/// M_m(R) == 0 ; requires m >= 1.
ClassVerdict is_m_isometric(const MultiOperator& r, unsigned m, double tau = default_tau);

/// S_n(R) == 0 ; requires n >= 1.
ClassVerdict is_n_symmetric(const MultiOperator& r, unsigned n, double tau = default_tau);

/// Lambda_{m,n}(R) == 0 ; requires m + n >= 1.
ClassVerdict is_isosymmetric(const MultiOperator& r, unsigned m, unsigned n, double tau = default_tau);

using OrderPair = std::pair<unsigned, unsigned>;

struct MinimalOrders {
    /// Antichain of minimal zero cells, in discovery order (m + n ascending,
    /// then m ascending).
    std::vector<OrderPair> staircase;
    OrderPair search_bounds{0, 0};
    /// True when at least one zero cell was found inside the bounds.
    bool exhausted = false;
    /// Lambda evaluations actually performed (dominated cells are skipped).
    std::size_t evaluations = 0;
};

inline constexpr unsigned max_lattice_order = 12;

/// Sweeps the anti-diagonals m + n = s of [0..m_max] x [0..n_max] in
/// increasing s. Cells dominated by a known zero cell are skipped, which is
/// sound because isosymmetry is closed upwards in both orders. Cells on one
/// anti-diagonal are incomparable and are evaluated in parallel.
MinimalOrders minimal_orders(const MultiOperator& r, unsigned m_max, unsigned n_max, double tau = default_tau);

enum class FamilyDirection { vary_m, vary_n };

std::string_view to_string(FamilyDirection d) noexcept;

struct FamilyRank {
    std::size_t rank = 0;
    std::size_t size = 0;
    bool independent = false;
    /// R is m-isometric (vary_m) or n-symmetric (vary_n).
    bool class_hypothesis = false;
};

/// Numerical rank of {Lambda_{k,n-1} : k < m} (vary_m) or {Lambda_{m-1,l} : l < n}
/// (vary_n). Throws HypothesisUnmet when Lambda_{m-1,n-1}(R) is zero.
FamilyRank defect_family_rank(const MultiOperator& r, unsigned m, unsigned n, FamilyDirection direction,
                              double tau = default_tau, double tol_rank = default_tol_rank);

/// Smallest q <= dim with Q^a = 0 for every |a| = q, a product counting as
/// zero when |Q^a|_F <= tau (1 + max_j |Q_j|_F)^q dim; nullopt if none.
std::optional<unsigned> nilpotency_order(const MultiOperator& q, double tau = default_tau);

} // namespace isosym
