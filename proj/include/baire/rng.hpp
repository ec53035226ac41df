#pragma once

#include <cmath>
#include <cstdint>

namespace baire {

// All randomness in the library flows through SplitMix64: state advances by the
// 64-bit golden-ratio increment and is finalized by two xor-multiply rounds.
// It is seedable, splittable via derive_seed, and produces the same stream on
// every platform, which is what makes seeded runs byte-reproducible.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent sub-stream seed for a pipeline stage. One top-level seed plus a
// stage number reproduces every random draw of a whole run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed + kGolden * (stream + 1));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGolden);
    return mix64(z);
  }

  // Uniform double in [0,1): top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0,1], keeps the log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Fixed stage numbers for derive_seed so that file formats and reports can
// name the sub-stream that produced them.
enum class Stage : std::uint64_t {
  axes = 1,            // random projection axis generation
  gaussian_map = 2,    // Gaussian low-dimensional mapping
  distortion_pairs = 3,// pair sampling for the distortion report
  uniform_data = 4,    // synthetic uniform experiment data
};

inline std::uint64_t stage_seed(std::uint64_t seed, Stage s) {
  return derive_seed(seed, static_cast<std::uint64_t>(s));
}

}  // namespace baire
