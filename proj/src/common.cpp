#include "qlab/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qlab {

namespace {
// Chunks are sized so that even single-threaded runs touch memory in
// cache-friendly strides; 1 << 16 indices is small enough to balance load.
constexpr std::uint64_t kChunkSize = std::uint64_t{1} << 16;
}  // namespace

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QSETH_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

std::size_t chunk_count(std::uint64_t total) {
  return static_cast<std::size_t>((total + kChunkSize - 1) / kChunkSize);
}

void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
  const std::size_t chunks = chunk_count(total);
  if (chunks == 0) return;
  const unsigned workers = std::min<std::size_t>(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      fn(c, c * kChunkSize, std::min(total, (c + 1) * kChunkSize));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers)
        fn(c, c * kChunkSize, std::min(total, (c + 1) * kChunkSize));
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qlab
