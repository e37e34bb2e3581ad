// Reference computations for the tests. Nothing here calls into the library,
// so agreement with it is a genuine cross-check.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Gamma at a positive integer or half integer by Gamma(x + 1) = x Gamma(x).
inline double gamma_step(double x) {
  double g = std::fmod(x, 1.0) == 0.0 ? 1.0 : std::sqrt(pi);
  for (double y = std::fmod(x, 1.0) == 0.0 ? 1.0 : 0.5; y < x - 0.25; y += 1.0) g *= y;
  return g;
}

inline double log_gamma_step(double x) {
  double g = std::fmod(x, 1.0) == 0.0 ? 0.0 : 0.5 * std::log(pi);
  for (double y = std::fmod(x, 1.0) == 0.0 ? 1.0 : 0.5; y < x - 0.25; y += 1.0) g += std::log(y);
  return g;
}

template <class F>
double integrate(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q(15);
  return q.integrate(f, a, b);
}

template <class F>
double integrate_half_line(F f, double a) {
  boost::math::quadrature::exp_sinh<double> q(12);
  return q.integrate([&](double x) { return f(a + x); }, 0.0, std::numeric_limits<double>::infinity());
}

// int_a^inf (1 + r^2)^{-alpha} dr with a substitution that keeps large alpha
// well conditioned: r = a + t / sqrt(alpha).
// The scaled variant returns (1 + a^2)^alpha times the moment, which stays
// representable where the moment itself underflows.
inline double half_line_moment_scaled(double alpha, double a) {
  const double s = 1.0 / std::sqrt(alpha);
  auto g = [&](double t) {
    const double r = a + s * t;
    return s * std::exp(-alpha * (std::log1p(r * r) - std::log1p(a * a)));
  };
  boost::math::quadrature::exp_sinh<double> q(12);
  return q.integrate(g, 0.0, std::numeric_limits<double>::infinity());
}

inline double half_line_moment(double alpha, double a) {
  return half_line_moment_scaled(alpha, a) * std::exp(-alpha * std::log1p(a * a));
}

// I_k(a) for integer k by climbing the integration-by-parts relation from
// I_1(a) = pi/2 - arctan(a). Only used for small k, where climbing is stable.
inline double half_line_moment_arctan(int k, double a) {
  double I = 0.5 * pi - std::atan(a);
  for (int b = 1; b < k; ++b)
    I = ((2.0 * b - 1.0) * I - a * std::pow(1.0 + a * a, -b)) / (2.0 * b);
  return I;
}

// int over S^{m-1} of prod x_i^{e_i}, peeling one coordinate at a time:
// int_{S^{m-1}} x_1^{e_1} g = int_{-1}^{1} t^{e_1} (1-t^2)^{(m-3)/2 + |rest|/2} dt * int_{S^{m-2}} g.
inline double sphere_moment_by_slices(std::vector<int> e) {
  const int m = static_cast<int>(e.size());
  if (m == 1) return (e[0] % 2 == 0) ? 2.0 : 0.0;
  int rest = 0;
  for (int i = 1; i < m; ++i) rest += e[i];
  const double power = 0.5 * (m - 3) + 0.5 * rest;
  const int e1 = e[0];
  // t = sin(th) keeps the integrand smooth at the poles.
  const double slice = integrate(
      [&](double th) { return std::pow(std::sin(th), e1) * std::pow(std::cos(th), 2.0 * power + 1.0); },
      -0.5 * pi, 0.5 * pi);
  e.erase(e.begin());
  return slice * sphere_moment_by_slices(e);
}

inline double rel(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

}  // namespace oracle
