#include "blowup/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "blowup/error.hpp"

namespace blowup {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::config: return "config";
    case ErrorCode::divergent_moment: return "divergent_moment";
    case ErrorCode::slow_convergence: return "slow_convergence";
    case ErrorCode::not_converged: return "not_converged";
    case ErrorCode::no_real_root: return "no_real_root";
    case ErrorCode::degenerate_dimension: return "degenerate_dimension";
  }
  return "unknown";
}

namespace specfun {
namespace {

// Below this offset the series ratio (1+a^2)^{-1} is too close to one.
constexpr double kSeriesMinOffset = 0.05;

void require_moment_domain(double alpha, double a, bool allow_zero_offset) {
  if (!(alpha > 0.5)) {
    throw Error(ErrorCode::domain, "half-line moment needs alpha > 1/2, got " +
                                       std::to_string(alpha));
  }
  if (!(a > 0.0) && !(allow_zero_offset && a == 0.0)) {
    throw Error(ErrorCode::domain, "half-line moment needs a > 0, got " + std::to_string(a));
  }
}

HalfLineMoment make_moment(double alpha, double a, double log_value, MomentMethod m) {
  return {alpha, a, log_value, std::exp(log_value), m};
}

}  // namespace

const char* to_string(MomentMethod method) noexcept {
  switch (method) {
    case MomentMethod::series: return "series";
    case MomentMethod::recursion: return "recursion";
    case MomentMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

double log_beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw Error(ErrorCode::domain, "beta needs positive arguments, got (" +
                                       std::to_string(p) + ", " + std::to_string(q) + ")");
  }
  using boost::math::lgamma;
  return lgamma(p) + lgamma(q) - lgamma(p + q);
}

double beta(double p, double q) { return std::exp(log_beta(p, q)); }

double log_sphere_area(int m) {
  if (m < 1) throw Error(ErrorCode::domain, "sphere_area needs m >= 1");
  const double h = 0.5 * m;
  return std::log(2.0) + h * std::log(std::numbers::pi) - boost::math::lgamma(h);
}

double sphere_area(int m) { return std::exp(log_sphere_area(m)); }

HalfLineMoment half_line_moment_series(double alpha, double a) {
  require_moment_domain(alpha, a, false);
  if (a <= kSeriesMinOffset) {
    throw Error(ErrorCode::slow_convergence,
                "series for I_alpha(a) converges too slowly for a <= 0.05");
  }
  // I = a (1+a^2)^{-alpha} sum_k t_k,
  // t_0 = 1/(2 alpha - 1), t_{k+1} = t_k (2 alpha + 2k) / ((2 alpha + 2k + 1)(1 + a^2)).
  const double q = 1.0 + a * a;
  double term = 1.0 / (2.0 * alpha - 1.0);
  double sum = 0.0;
  for (long k = 0; k < 100000000; ++k) {
    sum += term;
    const double b = 2.0 * alpha + 2.0 * static_cast<double>(k);
    term *= b / ((b + 1.0) * q);
    if (term < 1e-16 * sum) break;
  }
  return make_moment(alpha, a, std::log(a) + std::log(sum) - alpha * std::log1p(a * a),
                     MomentMethod::series);
}

HalfLineMoment half_line_moment_recursion(double alpha, double a) {
  require_moment_domain(alpha, a, false);
  if (a <= kSeriesMinOffset) {
    throw Error(ErrorCode::slow_convergence,
                "backward recurrence for I_alpha(a) needs a > 0.05");
  }
  // Scaled unknowns y_k = I_{alpha+k}(a) (1+a^2)^{alpha+k} obey
  //   y_k = 2b/(2b-1) y_{k+1} / (1+a^2) + a/(2b-1),  b = alpha + k.
  // A zero seed at depth K is damped by roughly (1+a^2)^{-K}.
  const double lq = std::log1p(a * a);
  const long depth = static_cast<long>(std::ceil(40.0 / lq)) + 16;
  const double q = 1.0 + a * a;
  double y = 0.0;
  for (long k = depth - 1; k >= 0; --k) {
    const double b = alpha + static_cast<double>(k);
    y = (2.0 * b / (2.0 * b - 1.0)) * y / q + a / (2.0 * b - 1.0);
  }
  return make_moment(alpha, a, std::log(y) - alpha * lq, MomentMethod::recursion);
}

namespace {

// int_a^inf (1+r^2)^{-alpha} dr * (1+a^2)^{alpha}
double scaled_moment_quadrature(double alpha, double a, QuadratureSpec spec) {
  const double la = std::log1p(a * a);
  auto integrand = [alpha, la](double r) {
    return std::exp(-alpha * (std::log1p(r * r) - la));
  };
  spec.transform = Transform::semi_infinite_rational;
  spec.scale = (1.0 + a * a) / (2.0 * alpha * a + std::sqrt(2.0 * alpha * (1.0 + a * a)));
  return integrate_or_throw(integrand, a, kInfinity, spec);
}

}  // namespace

HalfLineMoment half_line_moment_quadrature(double alpha, double a,
                                           const QuadratureSpec& spec) {
  require_moment_domain(alpha, a, true);
  const double y = scaled_moment_quadrature(alpha, a, spec);
  return make_moment(alpha, a, std::log(y) - alpha * std::log1p(a * a),
                     MomentMethod::quadrature);
}

HalfLineMoment half_line_moment(double alpha, double a) {
  if (a > kSeriesMinOffset) return half_line_moment_series(alpha, a);
  return half_line_moment_quadrature(alpha, a);
}

RecursionResidual half_line_moment_recursion_check(double alpha, double a) {
  require_moment_domain(alpha, a, false);
  const double q = 1.0 + a * a;
  const double y0 = scaled_moment_quadrature(alpha, a, {});
  const double y1 = scaled_moment_quadrature(alpha + 1.0, a, {});
  const double scaled =
      std::abs(y0 - (2.0 * alpha / (2.0 * alpha - 1.0)) * y1 / q - a / (2.0 * alpha - 1.0));
  RecursionResidual out;
  out.relative = scaled / y0;
  const double scale = std::exp(-alpha * std::log1p(a * a));
  out.moment = y0 * scale;
  out.residual = scaled * scale;
  return out;
}

HalfLineMoment c_q(int n, double T_c, int q) {
  if (q < 0) throw Error(ErrorCode::domain, "c_q needs q >= 0");
  if (n - 5 - 2 * q <= 1) {
    throw Error(ErrorCode::divergent_moment,
                "c_q diverges unless n - 5 - 2q > 1 (n=" + std::to_string(n) +
                    ", q=" + std::to_string(q) + ")");
  }
  if (!(T_c < 0.0)) throw Error(ErrorCode::domain, "c_q needs T_c < 0");
  return half_line_moment(0.5 * (n - 5 - 2 * q), -T_c);
}

double log_radial_beta_moment(double s, double p, double A) {
  const double h = 0.5 * (s + 1.0);
  if (!(s > -1.0) || !(p - h > 0.0) || !(A > 0.0)) {
    throw Error(ErrorCode::domain, "radial moment diverges: need s > -1, p > (s+1)/2, A > 0");
  }
  return std::log(0.5) + (h - p) * std::log(A) + log_beta(h, p - h);
}

double radial_beta_moment(double s, double p, double A) {
  return std::exp(log_radial_beta_moment(s, p, A));
}

double monomial_sphere_moment(int m, std::span<const int> exponents) {
  if (m < 1 || static_cast<int>(exponents.size()) != m) {
    throw Error(ErrorCode::domain, "monomial_sphere_moment: need m >= 1 and m exponents");
  }
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw Error(ErrorCode::domain, "monomial_sphere_moment: negative exponent");
    if (e % 2 != 0) return 0.0;
    total += e;
  }
  // 2 prod Gamma((e_i+1)/2) / Gamma((m+|e|)/2), unrolled with Gamma(x+1) = x Gamma(x):
  // |S^{m-1}| * prod_i (e_i - 1)!! / prod_{j < |e|/2} (m + 2j).
  double ratio = 1.0;
  for (int e : exponents) {
    for (int k = e - 1; k > 1; k -= 2) ratio *= k;
  }
  for (int j = 0; j < total / 2; ++j) ratio /= (m + 2 * j);
  return sphere_area(m) * ratio;
}

}  // namespace specfun
}  // namespace blowup
