#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ddfl {

// Seeded generator with hand-rolled output mapping. std::mt19937_64 produces
// the same raw stream everywhere, but std::normal_distribution does not, so
// normals go through an explicit Box-Muller transform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on (0, 1]; never 0 so log() below is safe
  double uniform01() { return static_cast<double>((gen_() >> 11) + 1) * 0x1p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double a = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Salt for deriving the measurement-noise stream from the experiment seed, so
// enabling noise does not disturb the excitation draw.
inline constexpr std::uint64_t kNoiseSeedSalt = 0x9E3779B97F4A7C15ull;

}  // namespace ddfl
