// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "isosym/classify.hpp"
#include "isosym/combinatorics.hpp"
#include "isosym/construct.hpp"
#include "isosym/defect.hpp"
#include "isosym/harness.hpp"
#include "isosym/spectra.hpp"

using namespace isosym;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t seed = 1;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Result {
    bool passed = false;
    std::string detail;
};

Result suite(Suite s, unsigned trials, double max_seconds = 0.0) {
    SuiteConfig cfg;
    cfg.suite = s;
    cfg.trials = trials;
    cfg.seed = seed;
    const auto start = Clock::now();
    const auto rep = run_suite(cfg);
    const double elapsed = seconds_since(start);
    const std::size_t failures = rep.trials_run - rep.trials_passed;
    bool ok = failures == 0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu/%zu trials, %zu failures, worst %.3g, %.3f s", rep.trials_passed,
                  rep.trials_run, failures, rep.worst_residual, elapsed);
    std::string detail = buf;
    if (max_seconds > 0.0) {
        ok = ok && elapsed < max_seconds;
        std::snprintf(buf, sizeof buf, " (limit %.0f s)", max_seconds);
        detail += buf;
    }
    return {ok, detail};
}

Result reference_pair() {
    const auto e = example_2_2_pair();
    const auto start = Clock::now();
    const auto lambda = defect_Lambda(e, 1, 1);
    const auto m1 = defect_M(e, 1);
    const auto s1 = defect_S(e, 1);
    const double ms = seconds_since(start) * 1e3;
    char buf[200];
    std::snprintf(buf, sizeof buf, "|Lambda_11| = %.3g <= 1e-10, |M_1| = %.6g >= 0.9, |S_1| = %.6g >= 1.0, %.4f ms < 1 ms",
                  lambda.norm, m1.norm, s1.norm, ms);
    return {lambda.norm <= 1e-10 && m1.norm >= 0.9 && s1.norm >= 1.0 && ms < 1.0, buf};
}

Result perturbation() {
    auto res = suite(Suite::perturbation, 200);
    const auto j = jordan_augment({MultiOperator::identity(1, 1), {Scalar(1.0)}, 2});
    const ComplexMatrix expected{{1.0, 1.0}, {0.0, 1.0}};
    const bool shape = j.d() == 1 && j[0] == expected;
    const auto direct = lambda_outer_symmetric(j, 3, 4);
    const auto report = defect_Lambda(j, 3, 4);
    const bool zero = fro_norm(direct) == 0.0 && report.is_zero;
    char buf[200];
    std::snprintf(buf, sizeof buf, "; identity (+) Jordan block %s [[1,1],[0,1]], |Lambda_34| = %.3g",
                  shape ? "==" : "!=", fro_norm(direct));
    res.detail += buf;
    res.passed = res.passed && shape && zero;
    return res;
}

Result pascal() {
    const auto start = Clock::now();
    std::size_t violations = 0;
    for (unsigned n = 0; n <= 6; ++n) {
        for (std::size_t d = 1; d <= 3; ++d) {
            violations += verify_multinomial_recurrence(n, d) ? 0 : 1;
        }
    }
    const double elapsed = seconds_since(start);
    char buf[200];
    std::snprintf(buf, sizeof buf, "n <= 6, d <= 3: %zu violations, %.4f s < 1 s", violations, elapsed);
    return {violations == 0 && elapsed < 1.0, buf};
}

Result spectral() {
    auto res = suite(Suite::spectral, 200);
    const auto points = joint_point_spectrum(example_2_2_pair());
    bool exact = points.size() == 1;
    double norm = 0.0;
    if (exact) {
        const auto& mu = points[0].mu;
        norm = vector_norm(mu);
        exact = mu.size() == 2 && std::abs(mu[0]) <= 1e-12 && std::abs(mu[1] - Scalar(1.0)) <= 1e-12 &&
                std::abs(norm - 1.0) <= 1e-12;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "; reference pair: %zu point(s), mu = (0, 1) %s, |mu| = %.12g", points.size(),
                  exact ? "yes" : "no", norm);
    res.detail += buf;
    res.passed = res.passed && exact;
    return res;
}

Result orthogonality() {
    std::size_t asserted = 0;
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        for (const auto& r : {spherical_normal_tuple(2, 6, s), hermitian_tuple(3, 6, s),
                              spherical_normal_tuple(3, 4, s + 100), hermitian_tuple(1, 5, s + 100)}) {
            for (const auto& c : check_orthogonality(r, 1, 1)) {
                if (!c.required_orthogonal) {
                    continue;
                }
                ++asserted;
                worst = std::max(worst, c.gram_norm);
                violations += c.gram_norm <= 1e-8 ? 0 : 1;
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu gated pairs, %zu violations, worst Gram %.3g <= 1e-8", asserted, violations,
                  worst);
    return {violations == 0 && asserted > 0, buf};
}

Result independence() {
    const MultiOperator j({ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}});
    const auto fr = defect_family_rank(j, 3, 1, FamilyDirection::vary_m);
    char buf[200];
    std::snprintf(buf, sizeof buf, "{Lambda_k0 : k < 3} of [[1,1],[0,1]]: rank %zu of %zu", fr.rank, fr.size);
    return {fr.rank == 3 && fr.size == 3, buf};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Result()>> criteria[] = {
        {"reference pair defects", reference_pair},
        {"forms equivalence", [] { return suite(Suite::forms, 200); }},
        {"recurrences", [] { return suite(Suite::recurrence, 200, 30.0); }},
        {"perturbation expansion", [] { return suite(Suite::expansion, 100); }},
        {"nilpotent perturbation", perturbation},
        {"ascent window", [] { return suite(Suite::ascent, 200); }},
        {"multinomial Pascal identity", pascal},
        {"spectral inclusion", spectral},
        {"orthogonality", orthogonality},
        {"linear independence", independence},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        failed += r.passed ? 0 : 1;
        std::printf("%s %2d %s: %s\n", r.passed ? "PASS" : "FAIL", index, name, r.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
