#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace drapekit {

// Deterministic RNG used everywhere randomness is needed. All draws go
// through explicit arithmetic (no std distributions) so that a given seed
// reproduces bit-identical streams across runs and toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

  // Standard normal via Box-Muller; second value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// FNV-1a mix of a seed with a purpose tag, so independent consumers of one
// global seed get decorrelated streams.
inline uint64_t derive_seed(uint64_t seed, std::string_view purpose) {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<uint8_t>(seed >> (8 * i)));
  for (char c : purpose) mix(static_cast<uint8_t>(c));
  return h;
}

inline Rng make_rng(uint64_t seed, std::string_view purpose) {
  return Rng(derive_seed(seed, purpose));
}

}  // namespace drapekit
