#ifndef QLAB_COMMON_HPP
#define QLAB_COMMON_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace qlab {

// Base class for all library failures. CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the DIMACS reader.  `line` is 1-based and already baked into the
// message; it is kept as a field so tests can assert on it.
struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Raised when an input falls outside the domain of a partial function
// (weight-distinguish evaluation, gap decision with neither side holding).
struct PromiseViolation : Error {
  using Error::Error;
};

// Deterministic RNG used everywhere randomness is called for.  All sampling
// goes through the helpers below so results depend only on the seed, not on
// library-specific distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1.  Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below: bound must be positive");
    std::uint64_t mask = ~std::uint64_t{0};
    if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
    std::uint64_t limit = mask - mask % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  // Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Worker count for the few loops that split work across threads.
// QSETH_LAB_THREADS caps it; unset or 0 means "let the runtime decide".
unsigned worker_count();

// Chunk layout for parallel_chunks.  Depends only on `total`, never on the
// thread count, so per-chunk results can be combined deterministically.
std::size_t chunk_count(std::uint64_t total);

// Runs fn(chunk_index, begin, end) over disjoint chunks of [0, total),
// possibly on several threads.  Callers collect per-chunk results into a
// pre-sized vector and fold them in chunk order.
void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::size_t chunk_index, std::uint64_t begin,
                                              std::uint64_t end)>& fn);

}  // namespace qlab

#endif
