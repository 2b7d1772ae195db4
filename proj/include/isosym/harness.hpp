#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isosym/defect.hpp"
#include "isosym/multioperator.hpp"
#include "isosym/tuple_io.hpp"

namespace isosym {

enum class Suite { recurrence, expansion, perturbation, ascent, independence, spectral, forms, scaled, jordan, tensor };

std::string_view to_string(Suite s) noexcept;
/// Throws InvalidParams for an unknown name.
Suite suite_from_string(std::string_view name);
const std::vector<Suite>& all_suites();

inline constexpr unsigned default_trials = 200;
inline constexpr std::size_t max_suite_dim = 64;

struct SuiteConfig {
    Suite suite = Suite::recurrence;
    unsigned trials = default_trials;
    std::uint64_t seed = 0;
    unsigned d_max = 3;
    unsigned dim_max = 8;
    unsigned m_max = 3;
    unsigned n_max = 3;
    double tol = default_tau;
    /// Counterexample files go here when set; nothing is written otherwise.
    std::optional<std::filesystem::path> out_dir;
};

/// Throws InvalidParams unless trials >= 1, every bound is positive and
/// dim_max <= max_suite_dim.
void validate(const SuiteConfig& cfg);

/// Everything needed to re-run one trial.
struct Instance {
    Suite suite = Suite::recurrence;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    /// Generator family, e.g. "random", "spherical", "square_zero".
    std::string family;
    MultiOperator r;
    /// Perturbing tuple, for suites that take R + Q apart.
    std::optional<MultiOperator> q;
    unsigned m = 0;
    unsigned n = 0;
    /// Nilpotency order of q (or of the Jordan shift).
    unsigned order = 0;
    /// Jordan suite: shift weights.
    Vector mu;
    /// Scaled suite: the weights beta.
    std::vector<double> beta;
    /// Independence suite: vary_m (true) or vary_n.
    bool vary_m = true;
};

struct TrialOutcome {
    bool passed = false;
    /// Normalized residual; for the independence suite the rank deficit, for
    /// the spectral suite the largest distance to compliance.
    double residual = 0.0;
    /// |LHS - RHS|_F over defect_magnitude of the same order; 0 for the
    /// independence and spectral suites. Not part of the verdict.
    double sharp_residual = 0.0;
    /// Set when evaluation threw.
    std::string error;
    /// Perturbation-type suites: max relative [Q_i, Q_j*], a condition the
    /// theorem does not assume.
    double unstated_residual = 0.0;
};

/// Deterministic in (cfg, trial).
Instance generate_instance(const SuiteConfig& cfg, std::uint64_t trial);

/// Never throws; a thrown evaluation is a failed trial with `error` set.
TrialOutcome evaluate_instance(const Instance& instance, double tol);

struct Counterexample {
    Json instance;
    double residual = 0.0;
    std::string error;
    /// Instance after halving dim while the failure persists, if it shrank.
    std::optional<Json> shrunk;
    std::optional<std::filesystem::path> file;
};

struct SuiteReport {
    std::string suite;
    SuiteConfig config;
    std::size_t trials_run = 0;
    std::size_t trials_passed = 0;
    double worst_residual = 0.0;
    double worst_sharp_residual = 0.0;
    std::vector<Counterexample> counterexamples;
    /// Trials where [Q_i, Q_j*] != 0, and failures among them.
    std::size_t unstated_violations = 0;
    std::size_t unstated_violation_failures = 0;
    bool all_passed() const noexcept { return trials_passed == trials_run; }
};

/// Trials run in parallel (ISOSYM_THREADS threads) and are reduced in trial
/// order, so the report does not depend on the schedule.
SuiteReport run_suite(const SuiteConfig& cfg);

/// Same result computed one trial at a time.
SuiteReport run_suite_serial(const SuiteConfig& cfg);

Json instance_to_json(const Instance& instance);
/// Throws ParseError for malformed input.
Instance instance_from_json(const Json& j);

/// Writes the instance with its residual. Throws IoError.
void dump_counterexample(const Instance& instance, const TrialOutcome& outcome, const std::filesystem::path& path);

Instance load_counterexample(const std::filesystem::path& path);

/// Repeatedly replaces every tuple by its leading principal block of half the
/// dimension, keeping the step only while the blocks still commute and the
/// trial still fails. Returns nullopt when no step was kept.
std::optional<Instance> shrink(const Instance& instance, double tol);

Json report_to_json(const SuiteReport& report);
Json config_to_json(const SuiteConfig& cfg);

} // namespace isosym
