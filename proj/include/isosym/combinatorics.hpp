#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace isosym {

/// Exact coefficient type. Every constructor of a coefficient checks for
/// overflow and throws Overflow instead of wrapping.
using Count = std::uint64_t;

/// gamma in N_0^d.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> components) : components_(std::move(components)) {}
    MultiIndex(std::initializer_list<unsigned> components) : components_(components) {}

    static MultiIndex zero(std::size_t d) { return MultiIndex(std::vector<unsigned>(d, 0U)); }
    /// The d-tuple with 1 in entry i.
    static MultiIndex unit(std::size_t d, std::size_t i);

    std::size_t size() const noexcept { return components_.size(); }
    unsigned operator[](std::size_t i) const noexcept { return components_[i]; }
    const std::vector<unsigned>& components() const noexcept { return components_; }

    /// |gamma|
    unsigned degree() const noexcept;
    /// gamma! as an exact integer.
    Count factorial() const;

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<unsigned> components_;
};

/// (m; alpha, gamma, k) with |alpha| + |gamma| + k == m.
struct Trinomial {
    unsigned m = 0;
    MultiIndex alpha;
    MultiIndex gamma;
    unsigned k = 0;
};

/// n choose k; 0 when k > n. Throws Overflow past 64 bits.
Count binomial(unsigned n, unsigned k);

/// n!, exact; throws Overflow for n > 20.
Count factorial(unsigned n);

/// |gamma|! / gamma!
Count multinomial_weight(const MultiIndex& gamma);

/// m! / (alpha! gamma! k!). Throws InvariantViolation when the parts do not
/// sum to m or alpha and gamma have different lengths.
Count trinomial_coeff(const Trinomial& t);

/// Coefficient with signed parts; any negative part gives 0. Used to state
/// the Pascal-type recurrence uniformly at its boundary terms.
Count trinomial_signed(int m, const std::vector<int>& alpha, const std::vector<int>& gamma, int k);

/// Upper bound on the size of multi_indices' output.
inline constexpr Count max_enumeration = 1'000'000;

/// Every gamma in N_0^d with |gamma| == k, each once, in increasing
/// lexicographic order. Throws TooLarge above max_enumeration entries.
std::vector<MultiIndex> multi_indices(std::size_t d, unsigned k);

/// Checks binom(n+1; a,g,k) = sum_i [binom(n; a-e_i,g,k) + binom(n; a,g-e_i,k)] + binom(n; a,g,k-1)
/// for every decomposition |a| + |g| + k == n + 1 in dimension d.
bool verify_multinomial_recurrence(unsigned n, std::size_t d);

} // namespace isosym
