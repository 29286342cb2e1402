#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace csg {

/// Runs task(i) for i in [0, tasks) on up to `jobs` threads. Tasks are handed
/// out in index order; callers merge per-task results themselves.
template <class Task>
void parallel_for(int tasks, int jobs, Task&& task) {
  if (jobs <= 1 || tasks <= 1) {
    for (int i = 0; i < tasks; ++i)
      task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, tasks);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < tasks; i = next++)
        task(i);
    });
  for (auto& th : pool)
    th.join();
}

}  // namespace csg
