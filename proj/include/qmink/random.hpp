#ifndef QMINK_RANDOM_HPP
#define QMINK_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qmink {

/// Seeded source of sample points. The bits-to-double mapping is fixed here
/// so sample sets do not depend on the standard library's distributions.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform in the closed disk of the given radius.
  std::complex<double> disk(double radius) {
    double r = radius * std::sqrt(unit());
    double th = 2.0 * std::numbers::pi * unit();
    return std::polar(r, th);
  }

  std::uint64_t bits() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qmink

#endif  // QMINK_RANDOM_HPP
