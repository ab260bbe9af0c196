#pragma once

#include <cstdint>
#include <random>

namespace circleform {

// Independent stream identifiers. Every stochastic draw in a trial consumes
// its own stream keyed by (seed, trial, purpose), so toggling one attribute
// never shifts the draws of another.
enum class StreamPurpose : std::uint64_t {
  Positions = 1,
  Delays = 2,
  Perturbation = 3,
  Heterogeneity = 4,
  Shuffle = 5,
};

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), with 53 bits of mantissa; identical across platforms.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline RngStream make_stream(std::uint64_t seed, std::uint64_t trial, StreamPurpose purpose) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL + trial));
  s = splitmix64(s ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(purpose)));
  return RngStream(s);
}

}  // namespace circleform
