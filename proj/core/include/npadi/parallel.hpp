#pragma once

namespace npadi {

/// True when the library was built with OpenMP; otherwise every routine runs serially
/// and the thread count is fixed at 1.
bool parallel_available() noexcept;

/// Sets the number of threads used by the ADI line sweeps. Results are identical for
/// any thread count. Throws ArgumentError for n < 1.
void set_thread_count(int n);

int thread_count() noexcept;

} // namespace npadi
