#include "isosym/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "isosym/errors.hpp"

namespace isosym {

namespace {

Count checked_mul(Count a, Count b, const char* what) {
    Count out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Overflow(std::string(what) + ": coefficient exceeds 64 bits");
    }
    return out;
}

// Multinomial (sum parts)! / prod(parts!) as a product of binomials, which
// stays representable whenever the result is.
Count multinomial_of(const std::vector<unsigned>& parts, const char* what) {
    Count out = 1;
    unsigned running = 0;
    for (unsigned p : parts) {
        running += p;
        out = checked_mul(out, binomial(running, p), what);
    }
    return out;
}

void enumerate(std::size_t pos, unsigned remaining, std::vector<unsigned>& current, std::vector<MultiIndex>& out) {
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        out.emplace_back(current);
        return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
        current[pos] = v;
        enumerate(pos + 1, remaining - v, current, out);
    }
}

} // namespace

MultiIndex MultiIndex::unit(std::size_t d, std::size_t i) {
    std::vector<unsigned> c(d, 0U);
    c.at(i) = 1;
    return MultiIndex(std::move(c));
}

unsigned MultiIndex::degree() const noexcept {
    return std::accumulate(components_.begin(), components_.end(), 0U);
}

Count MultiIndex::factorial() const {
    Count out = 1;
    for (unsigned c : components_) {
        out = checked_mul(out, isosym::factorial(c), "MultiIndex::factorial");
    }
    return out;
}

Count binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        // acc == C(n, i) here, and C(n, i) * (n - i) == C(n, i + 1) * (i + 1).
        acc = acc * (n - i) / (i + 1);
        if (acc > std::numeric_limits<Count>::max()) {
            throw Overflow("binomial(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
        }
    }
    return static_cast<Count>(acc);
}

Count factorial(unsigned n) {
    Count out = 1;
    for (unsigned i = 2; i <= n; ++i) {
        out = checked_mul(out, i, "factorial");
    }
    return out;
}

Count multinomial_weight(const MultiIndex& gamma) { return multinomial_of(gamma.components(), "multinomial_weight"); }

Count trinomial_coeff(const Trinomial& t) {
    if (t.alpha.size() != t.gamma.size()) {
        throw InvariantViolation("trinomial_coeff: alpha and gamma have different lengths");
    }
    if (t.alpha.degree() + t.gamma.degree() + t.k != t.m) {
        throw InvariantViolation("trinomial_coeff: |alpha| + |gamma| + k != m");
    }
    std::vector<unsigned> parts = t.alpha.components();
    parts.insert(parts.end(), t.gamma.components().begin(), t.gamma.components().end());
    parts.push_back(t.k);
    return multinomial_of(parts, "trinomial_coeff");
}

Count trinomial_signed(int m, const std::vector<int>& alpha, const std::vector<int>& gamma, int k) {
    if (m < 0 || k < 0) {
        return 0;
    }
    std::vector<unsigned> a;
    std::vector<unsigned> g;
    for (int x : alpha) {
        if (x < 0) {
            return 0;
        }
        a.push_back(static_cast<unsigned>(x));
    }
    for (int x : gamma) {
        if (x < 0) {
            return 0;
        }
        g.push_back(static_cast<unsigned>(x));
    }
    return trinomial_coeff(
        Trinomial{static_cast<unsigned>(m), MultiIndex(std::move(a)), MultiIndex(std::move(g)), static_cast<unsigned>(k)});
}

std::vector<MultiIndex> multi_indices(std::size_t d, unsigned k) {
    if (d == 0) {
        throw InvalidParams("multi_indices: d must be positive");
    }
    const unsigned kd = k + static_cast<unsigned>(d) - 1;
    Count count = 0;
    try {
        count = binomial(kd, static_cast<unsigned>(d) - 1);
    } catch (const Overflow&) {
        throw TooLarge("multi_indices: count overflows");
    }
    if (count > max_enumeration) {
        throw TooLarge("multi_indices: " + std::to_string(count) + " indices exceed the enumeration bound");
    }
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<unsigned> current(d, 0U);
    enumerate(0, k, current, out);
    return out;
}

bool verify_multinomial_recurrence(unsigned n, std::size_t d) {
    const int top = static_cast<int>(n) + 1;
    for (int a = 0; a <= top; ++a) {
        for (int g = 0; a + g <= top; ++g) {
            const int k = top - a - g;
            for (const auto& alpha : multi_indices(d, static_cast<unsigned>(a))) {
                for (const auto& gamma : multi_indices(d, static_cast<unsigned>(g))) {
                    std::vector<int> al(alpha.components().begin(), alpha.components().end());
                    std::vector<int> ga(gamma.components().begin(), gamma.components().end());
                    const Count lhs = trinomial_signed(top, al, ga, k);
                    Count rhs = trinomial_signed(top - 1, al, ga, k - 1);
                    for (std::size_t i = 0; i < d; ++i) {
                        --al[i];
                        rhs += trinomial_signed(top - 1, al, ga, k);
                        ++al[i];
                        --ga[i];
                        rhs += trinomial_signed(top - 1, al, ga, k);
                        ++ga[i];
                    }
                    if (lhs != rhs) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace isosym
