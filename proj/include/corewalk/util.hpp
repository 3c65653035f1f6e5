#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace corewalk {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(begin, end) over contiguous chunks of [0, total). With one thread
// (or tiny inputs) it runs inline. Chunking is by index range only, so the
// result of any order independent work is the same for every thread count.
inline void parallel_for(std::size_t total, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || total < 2) {
    fn(0, total);
    return;
  }
  std::size_t n = static_cast<std::size_t>(threads);
  if (n > total) n = total;
  std::vector<std::thread> pool;
  pool.reserve(n);
  std::size_t chunk = (total + n - 1) / n;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t b = t * chunk;
    std::size_t e = b + chunk < total ? b + chunk : total;
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

// Writes content to path via a temporary file in the same directory plus an
// atomic rename, so readers never observe a half written file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace corewalk
