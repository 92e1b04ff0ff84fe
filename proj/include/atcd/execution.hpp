#pragma once

#include <cstddef>

namespace atcd
{

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// identical results; the serial one is what the tests trust.
enum class Exec
{
  Serial,
  Parallel
};

/// Below this many work items the parallel kernels run serially anyway.
inline constexpr std::size_t parallel_grain = 1u << 12;

int worker_count();

} // namespace atcd
