#include "isosym/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <system_error>

#include "isosym/classify.hpp"
#include "isosym/combinatorics.hpp"
#include "isosym/construct.hpp"
#include "isosym/errors.hpp"
#include "isosym/parallel.hpp"
#include "isosym/random.hpp"
#include "isosym/spectra.hpp"

namespace isosym {

namespace {

constexpr std::array<Suite, 10> suite_list{Suite::recurrence, Suite::expansion,    Suite::perturbation, Suite::ascent,
                                           Suite::independence, Suite::spectral, Suite::forms,        Suite::scaled,
                                           Suite::jordan,     Suite::tensor};

constexpr double inf = std::numeric_limits<double>::infinity();

// ---- instance families ------------------------------------------------------

struct Base {
    MultiOperator r;
    unsigned m = 0;
    unsigned n = 0;
    std::string family;
};

// (m,n)-isosymmetric tuples with known orders. Dimensions stay at or below
// dim_cap (example_2_2 excepted, which is always 3).
Base isosymmetric_base(Rng& rng, unsigned d_max, unsigned dim_cap) {
    const unsigned kinds = d_max >= 2 ? 5 : 3;
    const unsigned kind = rng.between(0, kinds - 1);
    const unsigned dim = rng.between(1, std::max(1U, dim_cap));
    switch (kind) {
    case 0: {
        const unsigned d = rng.between(1, d_max);
        return {spherical_normal_tuple(d, dim, rng.next()), 1, 0, "spherical"};
    }
    case 1: {
        const unsigned d = rng.between(1, d_max);
        return {hermitian_tuple(d, dim, rng.next()), 0, 1, "hermitian"};
    }
    case 2: {
        // I + u v* with v orthogonal to u, spread over d coordinates.
        const unsigned d = rng.between(1, d_max);
        const auto pair = square_zero_tuple(2, std::max(2U, dim), rng.next());
        ScaledTupleSpec spec;
        spec.base = pair[0] + pair[1];
        double sum = 0.0;
        for (unsigned j = 0; j < d; ++j) {
            spec.beta.push_back(0.1 + rng.uniform());
            sum += spec.beta.back() * spec.beta.back();
        }
        for (auto& b : spec.beta) {
            b /= std::sqrt(sum);
        }
        return {scaled_tuple(spec), 1, 1, "unipotent"};
    }
    case 3:
        return {example_2_2_pair(), 1, 1, "example_2_2"};
    default: {
        const unsigned d = rng.between(2, d_max);
        return {square_zero_tuple(d, std::max(2U, dim), rng.next()), 1, 1, "square_zero"};
    }
    }
}

Vector random_weights(Rng& rng, std::size_t d) {
    Vector mu(d);
    for (auto& z : mu) {
        z = rng.complex_normal();
    }
    return mu;
}

// lambda (I + N) with N nilpotent of index q, |lambda| = 1: a strict
// (2q-1)-isometry. With `hermitian_part`, a real shift a I + N instead: a
// strict (2q-1)-symmetry.
ComplexMatrix strict_block(Rng& rng, std::size_t dim, unsigned q, bool symmetric) {
    const auto s = shift_block(dim, q);
    ComplexMatrix n(dim, dim);
    ComplexMatrix power = s;
    for (unsigned p = 1; p < q; ++p) {
        Scalar c = rng.complex_normal();
        if (p == 1) {
            c = std::polar(0.5 + rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
        }
        n += c * power;
        power = power * s;
    }
    if (symmetric) {
        return Scalar(rng.uniform(-1.0, 1.0), 0.0) * ComplexMatrix::identity(dim) + n;
    }
    const Scalar lambda = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return lambda * (ComplexMatrix::identity(dim) + n);
}

// ---- evaluation helpers ------------------------------------------------------

double normalized(const ComplexMatrix& m, const MultiOperator& r, unsigned a, unsigned b) {
    return fro_norm(m) / defect_scale(r, a, b);
}

ComplexMatrix monomial(const MultiOperator& q, const MultiIndex& alpha) {
    ComplexMatrix out = ComplexMatrix::identity(q.dim());
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        for (unsigned e = 0; e < alpha[j]; ++e) {
            out = out * q[j];
        }
    }
    return out;
}

// max_{|alpha| = order} |Q^alpha|_F / ((1 + max|Q_j|)^order dim); exact
// zero products give exactly 0.
double nilpotency_residual(const MultiOperator& q, unsigned order) {
    const double scale = std::pow(1.0 + q.max_norm(), order) * static_cast<double>(q.dim());
    double worst = 0.0;
    for (const auto& alpha : multi_indices(q.d(), order)) {
        worst = std::max(worst, fro_norm(monomial(q, alpha)) / scale);
    }
    return worst;
}

double unstated_residual(const MultiOperator& q) {
    double worst = 0.0;
    for (const auto& a : q) {
        for (const auto& b : q) {
            worst = std::max(worst, relative_commutator(a, adjoint(b)));
        }
    }
    return worst;
}

std::pair<MultiOperator, MultiOperator> perturbation_parts(const Instance& in) {
    if (in.family.rfind("jordan", 0) == 0) {
        return jordan_parts({in.r, in.mu, in.order});
    }
    if (!in.q) {
        throw InvalidParams("instance has no perturbing tuple");
    }
    return tensor_parts(in.r, *in.q);
}

struct Check {
    bool passed = true;
    double residual = 0.0;
    double sharp = 0.0;
    void bound(double value, double tol) {
        residual = std::max(residual, value);
        passed = passed && value <= tol;
    }
    void require(bool ok) { passed = passed && ok; }
    void relative(double norm, double magnitude) {
        if (magnitude > 0.0) {
            sharp = std::max(sharp, norm / magnitude);
        } else if (norm > 0.0) {
            sharp = inf;
        }
    }
};

Check evaluate_recurrence(const Instance& in, double tol) {
    Check c;
    const auto up_m = defect_Lambda(in.r, in.m + 1, in.n, tol).matrix;
    const auto up_n = defect_Lambda(in.r, in.m, in.n + 1, tol).matrix;
    const auto gap_m = up_m - lambda_step_m(in.r, in.m, in.n, tol);
    const auto gap_n = up_n - lambda_step_n(in.r, in.m, in.n, tol);
    c.bound(normalized(gap_m, in.r, in.m + 1, in.n), tol);
    c.bound(normalized(gap_n, in.r, in.m, in.n + 1), tol);
    c.relative(fro_norm(gap_m), defect_magnitude(in.r, in.m + 1, in.n));
    c.relative(fro_norm(gap_n), defect_magnitude(in.r, in.m, in.n + 1));
    return c;
}

Check evaluate_forms(const Instance& in, double tol) {
    Check c;
    const auto gap = lambda_outer_symmetric(in.r, in.m, in.n) - lambda_outer_isometric(in.r, in.m, in.n);
    c.bound(normalized(gap, in.r, in.m, in.n), tol);
    c.relative(fro_norm(gap), defect_magnitude(in.r, in.m, in.n));
    return c;
}

Check evaluate_expansion(const Instance& in, double tol) {
    Check c;
    const auto [r, q] = perturbation_parts(in);
    const auto sum = r + q;
    const auto direct = defect_Lambda(sum, in.m, in.n, tol).matrix;
    const auto expanded = perturbation_expansion(r, q, in.m, in.n, tol);
    c.bound(normalized(direct - expanded, sum, in.m, in.n), tol);
    c.relative(fro_norm(direct - expanded), defect_magnitude(sum, in.m, in.n));
    return c;
}

// Hypotheses and conclusion of the nilpotent perturbation theorem on R + Q.
Check evaluate_theorem(const MultiOperator& r, const MultiOperator& q, const Instance& in, double tol) {
    Check c;
    c.require(cross_commutation_residual(r, q) == 0.0);
    const auto hypothesis = defect_Lambda(r, in.m, in.n, tol).matrix;
    c.bound(normalized(hypothesis, r, in.m, in.n), tol);
    c.relative(fro_norm(hypothesis), defect_magnitude(r, in.m, in.n));
    c.bound(nilpotency_residual(q, in.order), tol);
    const auto sum = r + q;
    const unsigned m2 = in.m + 2 * in.order - 2;
    const unsigned n2 = in.n + 2 * in.order - 1;
    const auto conclusion = defect_Lambda(sum, m2, n2, tol).matrix;
    c.bound(normalized(conclusion, sum, m2, n2), tol);
    c.relative(fro_norm(conclusion), defect_magnitude(sum, m2, n2));
    return c;
}

Check evaluate_perturbation(const Instance& in, double tol) {
    const auto [r, q] = perturbation_parts(in);
    return evaluate_theorem(r, q, in, tol);
}

Check evaluate_jordan(const Instance& in, double tol) {
    const JordanAugmentSpec spec{in.r, in.mu, in.order};
    const auto [r, q] = jordan_parts(spec);
    Check c = evaluate_theorem(r, q, in, tol);
    c.require(jordan_augment(spec) == r + q);
    for (const auto& alpha : multi_indices(q.d(), in.order)) {
        const auto product = monomial(q, alpha);
        c.require(std::all_of(product.entries().begin(), product.entries().end(),
                              [](Scalar z) { return z == Scalar(0.0, 0.0); }));
    }
    return c;
}

Check evaluate_tensor(const Instance& in, double tol) {
    const auto [r, q] = tensor_parts(in.r, *in.q);
    Check c = evaluate_theorem(r, q, in, tol);
    const auto sum = tensor_sum(in.r, *in.q);
    c.require(sum == r + q);
    c.require(sum.dim() == in.r.dim() * in.q->dim());
    c.require(sum.commutation_residual() <= default_tol_comm);
    return c;
}

Check evaluate_scaled(const Instance& in, double tol) {
    Check c;
    const auto tuple = scaled_tuple({in.r[0], in.beta});
    double beta_sum = 0.0;
    for (double b : in.beta) {
        beta_sum += b;
    }
    const auto lhs = defect_Lambda(tuple, in.m, in.n, tol).matrix;
    const auto rhs = std::pow(beta_sum, static_cast<int>(in.n)) * defect_Lambda(in.r, in.m, in.n, tol).matrix;
    const double scale = std::max(defect_scale(tuple, in.m, in.n), defect_scale(in.r, in.m, in.n));
    c.bound(fro_norm(lhs - rhs) / scale, tol);
    const double weight = std::pow(std::abs(beta_sum), static_cast<int>(in.n));
    c.relative(fro_norm(lhs - rhs),
               std::max(defect_magnitude(tuple, in.m, in.n), weight * defect_magnitude(in.r, in.m, in.n)));
    return c;
}

Check evaluate_ascent(const Instance& in, double tol) {
    Check c;
    const auto found = minimal_orders(in.r, in.m, in.n, tol);
    for (const auto& [m, n] : found.staircase) {
        for (unsigned a = 0; a <= 2; ++a) {
            for (unsigned b = 0; b <= 2; ++b) {
                const auto report = defect_Lambda(in.r, m + a, n + b, tol);
                c.residual = std::max(c.residual, report.norm / defect_scale(in.r, m + a, n + b));
                c.relative(report.norm, defect_magnitude(in.r, m + a, n + b));
                c.require(report.is_zero);
            }
        }
    }
    return c;
}

Check evaluate_independence(const Instance& in, double tol) {
    Check c;
    const auto dir = in.vary_m ? FamilyDirection::vary_m : FamilyDirection::vary_n;
    const auto fr = defect_family_rank(in.r, in.m, in.n, dir, tol);
    c.residual = static_cast<double>(fr.size - fr.rank);
    c.require(fr.class_hypothesis && fr.independent);
    return c;
}

Check evaluate_spectral(const Instance& in, double tol) {
    Check c;
    c.require(is_isosymmetric(in.r, in.m, in.n, tol).holds);
    const auto spectrum = joint_point_spectrum(in.r);
    c.require(!spectrum.empty());
    for (const auto& cls : classify_points(spectrum)) {
        c.residual = std::max(c.residual, std::min(cls.sphere_gap, cls.imag_sum));
        c.require(cls.compliant);
    }
    for (const auto& pair : check_orthogonality(spectrum)) {
        if (pair.required_orthogonal) {
            c.residual = std::max(c.residual, pair.gram_norm);
        }
        c.require(pair.compliant);
    }
    return c;
}

Check dispatch(const Instance& in, double tol) {
    switch (in.suite) {
    case Suite::recurrence:
        return evaluate_recurrence(in, tol);
    case Suite::expansion:
        return evaluate_expansion(in, tol);
    case Suite::perturbation:
        return evaluate_perturbation(in, tol);
    case Suite::ascent:
        return evaluate_ascent(in, tol);
    case Suite::independence:
        return evaluate_independence(in, tol);
    case Suite::spectral:
        return evaluate_spectral(in, tol);
    case Suite::forms:
        return evaluate_forms(in, tol);
    case Suite::scaled:
        return evaluate_scaled(in, tol);
    case Suite::jordan:
        return evaluate_jordan(in, tol);
    case Suite::tensor:
        return evaluate_tensor(in, tol);
    }
    throw InvalidParams("unknown suite");
}

// ---- generation ---------------------------------------------------------------

void generate_random(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned d = rng.between(1, cfg.d_max);
    const unsigned dim = rng.between(1, cfg.dim_max);
    in.family = "random";
    in.r = random_commuting_tuple(d, dim, rng.next());
    in.m = rng.between(0, cfg.m_max);
    in.n = rng.between(0, cfg.n_max);
}

void generate_expansion(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned d = rng.between(1, cfg.d_max);
    const unsigned dq = rng.between(1, std::min(3U, cfg.dim_max));
    const unsigned dr = rng.between(1, std::max(1U, cfg.dim_max / dq));
    in.order = rng.between(1, dq);
    in.r = random_commuting_tuple(d, dr, rng.next());
    if (in.trial % 10 == 0) {
        in.family = "tensor:zero";
        in.q = MultiOperator::zero(d, dq);
    } else {
        in.family = "tensor:nilpotent";
        in.q = nilpotent_tuple(d, dq, in.order, rng.next(), in.trial % 2 == 1);
    }
    in.m = rng.between(0, cfg.m_max);
    in.n = rng.between(0, cfg.n_max);
}

constexpr std::array<std::pair<unsigned, unsigned>, 4> hypothesis_orders{{{1, 1}, {2, 1}, {1, 2}, {2, 2}}};

void generate_perturbation(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const auto cell = in.trial % 12;
    in.order = 1 + static_cast<unsigned>(cell / 4);
    in.m = hypothesis_orders[cell % 4].first;
    in.n = hypothesis_orders[cell % 4].second;
    auto base = isosymmetric_base(rng, cfg.d_max, std::min(3U, cfg.dim_max));
    in.r = std::move(base.r);
    if ((in.trial / 12) % 2 == 0) {
        in.family = "tensor:" + base.family;
        const unsigned dq = in.order + rng.between(0, 1);
        in.q = nilpotent_tuple(in.r.d(), dq, in.order, rng.next(), rng.between(0, 1) == 1);
    } else {
        in.family = "jordan:" + base.family;
        in.mu = random_weights(rng, in.r.d());
    }
}

void generate_fixture(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned kind = rng.between(0, 3);
    const unsigned cap = std::min(3U, cfg.dim_max);
    if (kind == 0) {
        const unsigned d = rng.between(1, cfg.d_max);
        in.r = random_commuting_tuple(d, rng.between(1, cap), rng.next());
        in.family = "random";
    } else if (kind == 1) {
        auto base = isosymmetric_base(rng, cfg.d_max, cap);
        in.r = std::move(base.r);
        in.family = base.family;
    } else if (kind == 2) {
        auto base = isosymmetric_base(rng, cfg.d_max, 2);
        const unsigned q = rng.between(1, 2);
        in.r = jordan_augment({base.r, random_weights(rng, base.r.d()), q});
        in.family = "jordan:" + base.family;
    } else {
        auto base = isosymmetric_base(rng, cfg.d_max, 2);
        const unsigned q = rng.between(1, 2);
        in.r = tensor_sum(base.r, nilpotent_tuple(base.r.d(), q, q, rng.next()));
        in.family = "tensor:" + base.family;
    }
    in.m = cfg.m_max;
    in.n = cfg.n_max;
}

void generate_independence(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned q = rng.between(2, 3);
    const unsigned dim = std::min(cfg.dim_max, q + rng.between(0, 1));
    in.vary_m = in.trial % 2 == 0;
    const unsigned strict_order = 2 * std::min(q, dim) - 1;
    const auto block = strict_block(rng, dim, std::min(q, dim), !in.vary_m);
    const unsigned d = rng.between(1, cfg.d_max);
    ScaledTupleSpec spec{block, {}};
    double sum = 0.0;
    for (unsigned j = 0; j < d; ++j) {
        spec.beta.push_back(0.1 + rng.uniform());
        sum += spec.beta.back() * spec.beta.back();
    }
    for (auto& b : spec.beta) {
        b /= std::sqrt(sum);
    }
    in.r = scaled_tuple(spec);
    in.family = in.vary_m ? "strict_isometry" : "strict_symmetry";
    in.order = std::min(q, dim);
    in.m = in.vary_m ? strict_order : 1;
    in.n = in.vary_m ? 1 : strict_order;
}

void generate_spectral(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned kind = rng.between(0, 2);
    const unsigned cap = std::min(4U, cfg.dim_max);
    auto base = isosymmetric_base(rng, cfg.d_max, kind == 0 ? cap : 2);
    if (kind == 0) {
        in.r = std::move(base.r);
        in.family = base.family;
        in.m = base.m;
        in.n = base.n;
        return;
    }
    const unsigned q = rng.between(1, 3);
    if (kind == 1) {
        in.r = jordan_augment({base.r, random_weights(rng, base.r.d()), q});
        in.family = "jordan:" + base.family;
    } else {
        in.r = tensor_sum(base.r, nilpotent_tuple(base.r.d(), q, q, rng.next(), true));
        in.family = "tensor:" + base.family;
    }
    in.m = base.m + 2 * q - 2;
    in.n = base.n + 2 * q - 1;
}

void generate_scaled(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    const unsigned d = rng.between(1, cfg.d_max);
    const unsigned dim = rng.between(1, cfg.dim_max);
    in.family = "scaled:random";
    in.r = random_commuting_tuple(1, dim, rng.next());
    double sum = 0.0;
    for (unsigned j = 0; j < d; ++j) {
        in.beta.push_back(rng.normal());
        sum += in.beta.back() * in.beta.back();
    }
    for (auto& b : in.beta) {
        b /= std::sqrt(sum);
    }
    in.m = rng.between(0, cfg.m_max);
    in.n = rng.between(0, cfg.n_max);
}

void generate_jordan(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    in.order = 1 + static_cast<unsigned>(in.trial % 3);
    auto base = isosymmetric_base(rng, cfg.d_max, std::min(3U, cfg.dim_max));
    in.family = "jordan:" + base.family;
    in.r = std::move(base.r);
    in.m = base.m;
    in.n = base.n;
    in.mu = random_weights(rng, in.r.d());
}

void generate_tensor(Instance& in, Rng& rng, const SuiteConfig& cfg) {
    in.order = 1 + static_cast<unsigned>(in.trial % 3);
    auto base = isosymmetric_base(rng, cfg.d_max, std::min(3U, cfg.dim_max));
    in.family = "tensor:" + base.family;
    in.r = std::move(base.r);
    in.m = base.m;
    in.n = base.n;
    const unsigned dq = in.order + rng.between(0, 1);
    in.q = nilpotent_tuple(in.r.d(), dq, in.order, rng.next(), rng.between(0, 1) == 1);
}

// ---- reports -------------------------------------------------------------------

Json residual_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

SuiteReport run(const SuiteConfig& cfg, bool parallel) {
    validate(cfg);
    const auto count = static_cast<std::ptrdiff_t>(cfg.trials);
    std::vector<Instance> instances(cfg.trials);
    std::vector<TrialOutcome> outcomes(cfg.trials);
    std::vector<std::string> generation_errors(cfg.trials);
    const int threads = parallel ? static_cast<int>(effective_threads()) : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (parallel)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
        const auto i = static_cast<std::size_t>(t);
        try {
            instances[i] = generate_instance(cfg, i);
            outcomes[i] = evaluate_instance(instances[i], cfg.tol);
        } catch (const std::exception& e) {
            outcomes[i].passed = false;
            outcomes[i].residual = inf;
            outcomes[i].error = std::string("generation failed: ") + e.what();
            instances[i].suite = cfg.suite;
            instances[i].trial = i;
        }
    }

    SuiteReport report;
    report.suite = std::string(to_string(cfg.suite));
    report.config = cfg;
    report.trials_run = cfg.trials;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        report.worst_residual = std::max(report.worst_residual, o.residual);
        report.worst_sharp_residual = std::max(report.worst_sharp_residual, o.sharp_residual);
        const bool unstated = o.unstated_residual > default_tol_comm;
        report.unstated_violations += unstated ? 1 : 0;
        if (o.passed) {
            ++report.trials_passed;
            continue;
        }
        report.unstated_violation_failures += unstated ? 1 : 0;
        Counterexample ce;
        ce.residual = o.residual;
        ce.error = o.error;
        if (instances[i].r.d() > 0) {
            ce.instance = instance_to_json(instances[i]);
            if (const auto small = shrink(instances[i], cfg.tol)) {
                ce.shrunk = instance_to_json(*small);
            }
            if (cfg.out_dir) {
                const auto path = *cfg.out_dir / (report.suite + "-trial-" + std::to_string(i) + ".json");
                dump_counterexample(instances[i], o, path);
                ce.file = path;
            }
        }
        report.counterexamples.push_back(std::move(ce));
    }
    return report;
}

unsigned read_unsigned(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw ParseError(std::string("instance: \"") + key + "\" must be an unsigned integer");
    }
    return j.at(key).get<unsigned>();
}

} // namespace

std::string_view to_string(Suite s) noexcept {
    switch (s) {
    case Suite::recurrence:
        return "recurrence";
    case Suite::expansion:
        return "expansion";
    case Suite::perturbation:
        return "perturbation";
    case Suite::ascent:
        return "ascent";
    case Suite::independence:
        return "independence";
    case Suite::spectral:
        return "spectral";
    case Suite::forms:
        return "forms";
    case Suite::scaled:
        return "scaled";
    case Suite::jordan:
        return "jordan";
    case Suite::tensor:
        return "tensor";
    }
    return "?";
}

Suite suite_from_string(std::string_view name) {
    for (auto s : suite_list) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw InvalidParams("unknown suite \"" + std::string(name) + "\"");
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> suites(suite_list.begin(), suite_list.end());
    return suites;
}

void validate(const SuiteConfig& cfg) {
    if (cfg.trials < 1) {
        throw InvalidParams("suite: trials must be at least 1");
    }
    if (cfg.d_max < 1 || cfg.dim_max < 1 || cfg.m_max < 1 || cfg.n_max < 1) {
        throw InvalidParams("suite: bounds must be positive");
    }
    if (cfg.dim_max > max_suite_dim) {
        throw InvalidParams("suite: dim_max exceeds " + std::to_string(max_suite_dim));
    }
    if (!(cfg.tol > 0.0)) {
        throw InvalidParams("suite: tol must be positive");
    }
}

Instance generate_instance(const SuiteConfig& cfg, std::uint64_t trial) {
    Instance in;
    in.suite = cfg.suite;
    in.trial = trial;
    in.seed = Rng::derive(cfg.seed, trial);
    Rng rng(in.seed);
    switch (cfg.suite) {
    case Suite::recurrence:
    case Suite::forms:
        generate_random(in, rng, cfg);
        break;
    case Suite::expansion:
        generate_expansion(in, rng, cfg);
        break;
    case Suite::perturbation:
        generate_perturbation(in, rng, cfg);
        break;
    case Suite::ascent:
        generate_fixture(in, rng, cfg);
        break;
    case Suite::independence:
        generate_independence(in, rng, cfg);
        break;
    case Suite::spectral:
        generate_spectral(in, rng, cfg);
        break;
    case Suite::scaled:
        generate_scaled(in, rng, cfg);
        break;
    case Suite::jordan:
        generate_jordan(in, rng, cfg);
        break;
    case Suite::tensor:
        generate_tensor(in, rng, cfg);
        break;
    }
    return in;
}

TrialOutcome evaluate_instance(const Instance& instance, double tol) {
    TrialOutcome out;
    try {
        const auto c = dispatch(instance, tol);
        out.passed = c.passed;
        out.residual = c.residual;
        out.sharp_residual = c.sharp;
        const bool perturbed = instance.suite == Suite::perturbation || instance.suite == Suite::expansion ||
                               instance.suite == Suite::jordan || instance.suite == Suite::tensor;
        if (perturbed) {
            out.unstated_residual = unstated_residual(perturbation_parts(instance).second);
        }
    } catch (const std::exception& e) {
        out.passed = false;
        out.residual = inf;
        out.error = e.what();
    }
    return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) { return run(cfg, true); }

SuiteReport run_suite_serial(const SuiteConfig& cfg) { return run(cfg, false); }

Json instance_to_json(const Instance& in) {
    Json j;
    j["suite"] = std::string(to_string(in.suite));
    j["trial"] = in.trial;
    j["seed"] = in.seed;
    j["family"] = in.family;
    j["parameters"] = {{"m", in.m}, {"n", in.n}, {"order", in.order}, {"vary_m", in.vary_m}};
    j["parameters"]["mu"] = vector_to_json(in.mu);
    j["parameters"]["beta"] = in.beta;
    j["tuple"] = tuple_to_json(in.r);
    if (in.q) {
        j["perturbation"] = tuple_to_json(*in.q);
    }
    return j;
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("suite") || !j.at("suite").is_string() || !j.contains("parameters") ||
        !j.contains("tuple")) {
        throw ParseError("instance: expected an object with suite, parameters and tuple");
    }
    Instance in;
    in.suite = suite_from_string(j.at("suite").get<std::string>());
    in.trial = j.value("trial", std::uint64_t{0});
    in.seed = j.value("seed", std::uint64_t{0});
    in.family = j.value("family", std::string{});
    const auto& p = j.at("parameters");
    in.m = read_unsigned(p, "m");
    in.n = read_unsigned(p, "n");
    in.order = read_unsigned(p, "order");
    in.vary_m = p.value("vary_m", true);
    if (p.contains("mu")) {
        for (const auto& z : p.at("mu")) {
            if (!z.is_array() || z.size() != 2) {
                throw ParseError("instance: mu entries must be [re, im] pairs");
            }
            in.mu.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    if (p.contains("beta")) {
        in.beta = p.at("beta").get<std::vector<double>>();
    }
    in.r = tuple_from_json(j.at("tuple"), MultiOperator::Validation::unchecked).tuple;
    if (j.contains("perturbation")) {
        in.q = tuple_from_json(j.at("perturbation"), MultiOperator::Validation::unchecked).tuple;
    }
    return in;
}

void dump_counterexample(const Instance& instance, const TrialOutcome& outcome, const std::filesystem::path& path) {
    Json j = instance_to_json(instance);
    j["residual"] = residual_json(outcome.residual);
    j["sharp_residual"] = residual_json(outcome.sharp_residual);
    if (!outcome.error.empty()) {
        j["error"] = outcome.error;
    }
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
        }
    }
    write_text(path, j.dump(2) + "\n");
}

Instance load_counterexample(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("counterexample: invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

std::optional<Instance> shrink(const Instance& instance, double tol) {
    std::optional<Instance> best;
    Instance current = instance;
    while (current.r.dim() > 1) {
        Instance next = current;
        try {
            next.r = current.r.leading_block(current.r.dim() / 2);
            if (current.q) {
                if (current.q->dim() < 2) {
                    break;
                }
                next.q = current.q->leading_block(current.q->dim() / 2);
            }
        } catch (const Error&) {
            break; // blocks no longer commute
        }
        if (evaluate_instance(next, tol).passed) {
            break;
        }
        current = std::move(next);
        best = current;
    }
    return best;
}

Json config_to_json(const SuiteConfig& cfg) {
    return {{"suite", std::string(to_string(cfg.suite))},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"d_max", cfg.d_max},
            {"dim_max", cfg.dim_max},
            {"m_max", cfg.m_max},
            {"n_max", cfg.n_max},
            {"tol", cfg.tol}};
}

Json report_to_json(const SuiteReport& report) {
    Json j;
    j["suite"] = report.suite;
    j["config"] = config_to_json(report.config);
    j["trials_run"] = report.trials_run;
    j["trials_passed"] = report.trials_passed;
    j["worst_residual"] = residual_json(report.worst_residual);
    j["worst_sharp_residual"] = residual_json(report.worst_sharp_residual);
    j["passed"] = report.all_passed();
    j["unstated_conditions"] = {{"violations", report.unstated_violations},
                                {"failures_among_violations", report.unstated_violation_failures}};
    Json ces = Json::array();
    for (const auto& ce : report.counterexamples) {
        Json c;
        c["instance"] = ce.instance;
        c["residual"] = residual_json(ce.residual);
        if (!ce.error.empty()) {
            c["error"] = ce.error;
        }
        if (ce.shrunk) {
            c["shrunk"] = *ce.shrunk;
        }
        if (ce.file) {
            c["file"] = ce.file->string();
        }
        ces.push_back(std::move(c));
    }
    j["counterexamples"] = std::move(ces);
    return j;
}

} // namespace isosym
