#pragma once

#include <optional>
#include <string_view>

namespace isosym {

/// Parses an ISOSYM_THREADS value: a non-negative decimal integer, 0 meaning
/// "let OpenMP decide". Throws InvalidParams otherwise.
unsigned parse_thread_setting(std::string_view text);

/// Thread count requested by ISOSYM_THREADS; nullopt when unset or 0.
std::optional<unsigned> requested_threads();

/// Threads a parallel region will use: the ISOSYM_THREADS value, or the
/// OpenMP default.
unsigned effective_threads();

} // namespace isosym
