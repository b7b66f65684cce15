#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace tvtv {

// Worker cap from TVTV_THREADS (0 or unset = hardware concurrency).
inline int worker_count() {
  long requested = 0;
  if (const char* env = std::getenv("TVTV_THREADS")) requested = std::strtol(env, nullptr, 10);
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    requested = hw ? static_cast<long>(hw) : 1;
  }
  if (requested > 256) requested = 256;
  return static_cast<int>(requested);
}

// Static-partition parallel loop. f(i) must only touch state owned by index
// i, so results are identical for any worker count.
template <class F>
void parallel_for(Eigen::Index n, F&& f) {
  const int workers = std::min<long>(worker_count(), n > 0 ? n : 1);
  if (workers <= 1 || n < 2) {
    for (Eigen::Index i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Eigen::Index i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tvtv
