#pragma once

#include <cstdint>
#include <random>

namespace bptrack {

// One RNG stream. Distributions are constructed per call so the draw sequence
// is a pure function of the engine state; identical seeds give identical
// streams within a build.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal(double mean, double stddev) {
    if (stddev <= 0.0) return mean;
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<int>(mean)(engine_);
  }

  // Uniform on {0, ..., n-1}.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Splittable construction: stream i of run k under base_seed is seeded from
// seed_seq {base_seed_lo, base_seed_hi, k, i}. Runs are therefore independent
// of batch size and execution order.
inline RandomStream make_run_stream(std::uint64_t base_seed, std::uint32_t run_index,
                                    std::uint32_t substream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(base_seed >> 32), run_index, substream};
  return RandomStream(seq);
}

}  // namespace bptrack
