#pragma once

#include <cstdint>
#include <vector>

#include "isosym/construct.hpp"
#include "isosym/matrix.hpp"
#include "isosym/multioperator.hpp"

namespace testing {

// Commuting tuples drawn the way the suites draw them: d <= 3, dim <= 8.
inline std::vector<isosym::MultiOperator> random_tuples(std::size_t count, std::uint64_t seed) {
    std::vector<isosym::MultiOperator> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto d = 1 + i % 3;
        const auto dim = 1 + (i * 5 + 3) % 8;
        out.push_back(isosym::random_commuting_tuple(d, dim, seed + i, i % 2 == 0));
    }
    return out;
}

inline isosym::ComplexMatrix jordan2() { return {{1.0, 1.0}, {0.0, 1.0}}; }

inline isosym::MultiOperator single(const isosym::ComplexMatrix& m) { return isosym::MultiOperator({m}); }

} // namespace testing
