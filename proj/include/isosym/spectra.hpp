#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "isosym/matrix.hpp"
#include "isosym/multioperator.hpp"

namespace isosym {

inline constexpr double default_tol_spectrum = 1e-8;
inline constexpr double default_tol_classify = 1e-7;
inline constexpr std::size_t max_spectrum_dim = 128;

/// Eigenvalues of one component linked within this times (1 + |C|_F) form one
/// cluster: a q x q Jordan block splits into q eigenvalues about eps^(1/q)
/// apart, so distinct points closer than this are not resolved.
inline constexpr double cluster_tol = 1e-4;

struct JointEigenpair {
    Vector mu;
    /// Orthonormal basis of the common eigenspace.
    std::vector<Vector> basis;
    /// max over l and basis vectors v of |(R_l - mu_l) v|.
    double residual = 0.0;
};

/// All points mu with a nonzero common eigenvector, sorted lexicographically
/// by (re, im) of each coordinate. R_1 is split into the invariant subspaces
/// of its eigenvalue clusters, R_2..R_d are compressed to each of them and the
/// procedure recurses; each final subspace yields mu from the compressed
/// traces and its eigenvectors from the common null space of R_l - mu_l.
/// Throws TooLarge above max_spectrum_dim, InvarianceViolation when a
/// compression leaks out of the eigenspace by more than 10 tol (1 + |R_j|_F)
/// and ConvergenceFailure when a returned pair has residual above
/// tol (1 + max_j |R_j|_F).
std::vector<JointEigenpair> joint_point_spectrum(const MultiOperator& r, double tol = default_tol_spectrum);

struct SpectralClassification {
    Vector mu;
    /// | |mu|_2 - 1 |
    double sphere_gap = 0.0;
    /// | Im sum_l mu_l |
    double imag_sum = 0.0;
    bool on_sphere = false;
    bool real_sum = false;
    bool compliant = false;
};

SpectralClassification classify_point(const Vector& mu, double tol = default_tol_classify);

std::vector<SpectralClassification> classify_points(const std::vector<JointEigenpair>& spectrum,
                                                    double tol = default_tol_classify);

/// Classifies the joint point spectrum of an (m,n)-isosymmetric tuple.
/// Throws HypothesisUnmet when Lambda_{m,n}(R) is not zero.
std::vector<SpectralClassification> classify_spectrum(const MultiOperator& r, unsigned m, unsigned n,
                                                      double tol = default_tol_classify);

struct OrthogonalityCheck {
    std::size_t first = 0;
    std::size_t second = 0;
    Vector mu_first;
    Vector mu_second;
    /// | sum_j mu_j conj(mu'_j) - 1 |
    double gate_product = 0.0;
    /// | sum_j (mu_j - conj(mu'_j)) |
    double gate_sum = 0.0;
    /// |B_first* B_second|_F for the two eigenspace bases.
    double gram_norm = 0.0;
    /// Both gates exceed 10 tol.
    bool required_orthogonal = false;
    /// Both gates exceed tol but not both exceed 10 tol: recorded, not asserted.
    bool near_gate = false;
    bool compliant = true;
};

std::string_view gate_status(const OrthogonalityCheck& c) noexcept;

/// One entry per unordered pair of distinct joint eigenpairs.
std::vector<OrthogonalityCheck> check_orthogonality(const std::vector<JointEigenpair>& spectrum,
                                                    double tol = default_tol_spectrum);

/// As above on the spectrum of R. Throws HypothesisUnmet when Lambda_{m,n}(R)
/// is not zero.
std::vector<OrthogonalityCheck> check_orthogonality(const MultiOperator& r, unsigned m, unsigned n,
                                                    double tol = default_tol_spectrum);

struct ZeroCoordinatePoint {
    Vector mu;
    Scalar product;
    Scalar sum;
    /// sigma_min(sum_l R_l* - sum_l mu_l I)
    double sum_gap = 0.0;
    /// sum_l mu_l lies in the spectrum of sum_l R_l*: the per-point reading of
    /// the exclusion property holds here.
    bool consistent = false;
    /// sigma_min(sum_l mu_l R_l* - I)
    double unit_gap = 0.0;
    /// 1 lies in the spectrum of sum_l mu_l R_l*. For a joint eigenvector u,
    /// Lambda_{m,n} u = 0 forces this factor or the one behind `consistent`
    /// to be singular, so every point is covered by one of the two.
    bool unit_factor_singular = false;
};

struct ZeroCoordinateReport {
    std::vector<ZeroCoordinatePoint> points;
    /// Every listed point is consistent (vacuously true when none are listed).
    bool consistent = true;
    std::string_view reading = "per-point contrapositive";
};

/// For each joint eigenvalue with |prod_l mu_l| <= tol, checks whether
/// sum_l mu_l is an eigenvalue of sum_l R_l*; singularity means
/// sigma_min <= tol (1 + |sum R*|_F). Throws HypothesisUnmet when
/// Lambda_{m,n}(R) is not zero.
ZeroCoordinateReport check_zero_coordinate_exclusion(const MultiOperator& r, unsigned m, unsigned n,
                                                     double tol = default_tol_spectrum);

ZeroCoordinateReport zero_coordinate_report(const MultiOperator& r, const std::vector<JointEigenpair>& spectrum,
                                            double tol = default_tol_spectrum);

} // namespace isosym
