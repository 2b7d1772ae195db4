#include "isosym/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "isosym/errors.hpp"

namespace isosym {

unsigned parse_thread_setting(std::string_view text) {
    unsigned value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw InvalidParams("ISOSYM_THREADS must be a non-negative integer, got \"" + std::string(text) + "\"");
    }
    return value;
}

std::optional<unsigned> requested_threads() {
    const char* env = std::getenv("ISOSYM_THREADS");
    if (env == nullptr) {
        return std::nullopt;
    }
    const unsigned value = parse_thread_setting(env);
    if (value == 0) {
        return std::nullopt;
    }
    return value;
}

unsigned effective_threads() {
    if (const auto n = requested_threads()) {
        return *n;
    }
    return static_cast<unsigned>(omp_get_max_threads());
}

} // namespace isosym
