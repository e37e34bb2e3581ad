#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace blowup {

/// Seeded point generator. mt19937_64 has a fully specified output sequence
/// and the transforms below are written out by hand, so the stream is the
/// same on every conforming platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller (one value per call).
  double normal();
  /// Uniform in the ball of the given radius in R^dim.
  std::vector<double> in_ball(int dim, double radius);
  /// Uniform in the half ball {|x| < radius, x_last >= 0}.
  std::vector<double> in_half_ball(int dim, double radius);

 private:
  std::mt19937_64 rng_;
};

}  // namespace blowup
