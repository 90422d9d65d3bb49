#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace smm {

// Named random streams. Each (master seed, replicate, stream) triple owns an
// independent generator, so adding replicates or reordering the work never
// perturbs the draws of an existing replicate.
enum class Stream : std::uint64_t {
  PositionsRed = 1,
  PositionsBlue = 2,
  MarksRed = 3,
  MarksBlue = 4,
  Aux = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Two rounds of splitmix per component keep structured inputs (seed 0,
// consecutive replicate indices) from producing correlated stream seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                                    Stream stream) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(replicate + 0x51ED2701A3B4C5D6ULL));
  s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(stream) + 0x0DDC0FFEEBADF00DULL));
  return s;
}

// Deterministic sub-seed for nested experiment structure (e.g. one Table cell
// per (row, size) pair, each running its own replicate set).
constexpr std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t a,
                                       std::uint64_t b) {
  std::uint64_t s = splitmix64(master ^ splitmix64(a + 0x9E3779B97F4A7C15ULL));
  return splitmix64(s ^ splitmix64(b + 0xC2B2AE3D27D4EB4FULL));
}

class RngStream {
 public:
  RngStream(std::uint64_t master, std::uint64_t replicate, Stream stream)
      : engine_(derive_seed(master, replicate, stream)) {}

  explicit RngStream(std::uint64_t raw_seed) : engine_(raw_seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1). 53 random bits, so every value is exactly representable.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi). Guards the pathological rounding of lo + u * (hi - lo)
  // up to hi itself.
  double uniform(double lo, double hi) {
    double v = lo + uniform01() * (hi - lo);
    if (v >= hi) v = std::nextafter(hi, lo);
    return v;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  int poisson(double mean) {
    std::poisson_distribution<int> d(mean);
    return d(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smm
