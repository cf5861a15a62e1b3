#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace obstruction_lab {

// Thread count: explicit value, else OBSTRUCTION_LAB_THREADS, else hardware
// concurrency. Always >= 1.
int resolve_threads(std::optional<int> requested = std::nullopt);

// Splits [0, n) into contiguous blocks pulled by `threads` workers.
// body(begin, end, worker) must only write to its own slots; block
// boundaries never influence results.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t, int)>& body,
                  std::size_t block = 256);

}  // namespace obstruction_lab
