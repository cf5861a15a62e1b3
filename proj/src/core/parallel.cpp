#include "obstruction_lab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw LabError(ErrorKind::BadParam, "thread count must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("OBSTRUCTION_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw LabError(ErrorKind::BadParam, std::string("bad OBSTRUCTION_LAB_THREADS value: ") + env);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t, int)>& body, std::size_t block) {
  if (n == 0) return;
  block = std::max<std::size_t>(1, block);
  const std::size_t blocks = (n + block - 1) / block;
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), blocks));
  if (workers == 1) {
    body(0, n, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](int worker) {
    try {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) return;
        body(b * block, std::min(n, (b + 1) * block), worker);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(blocks);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace obstruction_lab
