#pragma once

#include <cstddef>

namespace kurepa {

/// Thread cap from KUREPA_THREADS (0 or unset = library default). Call once
/// before parallel regions; safe to call repeatedly.
void apply_thread_cap();

/// Threads a parallel region will use after the cap.
std::size_t effective_threads();

}  // namespace kurepa
