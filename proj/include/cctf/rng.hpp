#pragma once

#include <cstdint>
#include <random>

namespace cctf {

// One splitmix64 step: increment by the golden-gamma constant, then run the
// output finalizer. Used everywhere a 64-bit value has to be mixed into a
// well-spread seed (engine streams, per-run sweep seeds), so that nearby
// inputs (seed, seed+1, ...) give unrelated streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic pseudo-random stream. Wraps std::mt19937_64, whose raw output
// sequence is fixed by the standard, and derives all values (uniform doubles,
// bounded ints, Bernoulli draws) from raw 64-bit words directly -- the
// std::*_distribution adapters are implementation-defined and would break
// bit-reproducibility across toolchains.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution. Never returns 1.0, so
  // bernoulli(1.0) always succeeds and bernoulli(0.0) never does.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, n), unbiased via rejection. n must be >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (-n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  bool bernoulli(double p) { return next_double() < p; }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }
  bool operator!=(const Rng& other) const { return !(*this == other); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cctf
