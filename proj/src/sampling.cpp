#include "blowup/sampling.hpp"

#include <cmath>
#include <numbers>

namespace blowup {

double Sampler::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> Sampler::in_ball(int dim, double radius) {
  std::vector<double> x(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : x) {
      v = normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double r = radius * std::pow(uniform(), 1.0 / dim) / std::sqrt(norm2);
  for (double& v : x) v *= r;
  return x;
}

std::vector<double> Sampler::in_half_ball(int dim, double radius) {
  std::vector<double> x = in_ball(dim, radius);
  x.back() = std::fabs(x.back());
  return x;
}

}  // namespace blowup
