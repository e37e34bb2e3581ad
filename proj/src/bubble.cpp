#include "blowup/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "blowup/error.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"

namespace blowup::bubble {

namespace {

using specfun::QuadratureSpec;

// Shifted point y = x - (xi, T_c eps) and D = eps^2 + |y|^2.
struct Shifted {
  Eigen::VectorXd y;
  double D;
};

Shifted shift(const BubbleParams& p, std::span<const double> x) {
  p.validate();
  if (static_cast<int>(x.size()) != p.n) throw Error(ErrorCode::domain, "point must have n entries");
  Shifted s{Eigen::VectorXd(p.n), 0.0};
  for (int i = 0; i < p.n - 1; ++i) s.y[i] = x[i] - p.xi[i];
  s.y[p.n - 1] = x[p.n - 1] - p.T_c * p.eps;
  s.D = p.eps * p.eps + s.y.squaredNorm();
  return s;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (*hi - *lo) / mean;
}

}  // namespace

void BubbleParams::validate() const {
  if (n < 3) throw Error(ErrorCode::domain, "bubble needs n >= 3");
  if (!(eps > 0.0)) throw Error(ErrorCode::domain, "bubble needs eps > 0");
  if (!(T_c < 0.0)) throw Error(ErrorCode::domain, "bubble needs T_c < 0");
  if (static_cast<int>(xi.size()) != n - 1) throw Error(ErrorCode::domain, "xi must have n - 1 entries");
}

double log_eval(const BubbleParams& p, std::span<const double> x) {
  const Shifted s = shift(p, x);
  return 0.5 * (p.n - 2) * (std::log(p.eps) - std::log(s.D));
}

double eval_bubble(const BubbleParams& p, std::span<const double> x) {
  return std::exp(log_eval(p, x));
}

Jet jet(const BubbleParams& p, std::span<const double> x) {
  const Shifted s = shift(p, x);
  const double beta = 0.5 * (p.n - 2);
  Jet j;
  j.log_u = beta * (std::log(p.eps) - std::log(s.D));
  j.grad = (-2.0 * beta / s.D) * s.y;
  j.hess = (4.0 * beta * (beta + 1.0) / (s.D * s.D)) * (s.y * s.y.transpose());
  j.hess.diagonal().array() -= 2.0 * beta / s.D;
  return j;
}

double interior_residual(const BubbleParams& p, std::span<const double> x) {
  const Jet j = jet(p, x);
  const double minus_lap = -j.hess.trace();
  // u^{4/(n-2)} from the log form, independent of the jet algebra.
  const double power = std::exp(4.0 / (p.n - 2) * j.log_u);
  return minus_lap / (p.n * (p.n - 2) * power) - 1.0;
}

double boundary_residual(const BubbleParams& p, std::span<const double> x_prime) {
  std::vector<double> x(x_prime.begin(), x_prime.end());
  x.push_back(0.0);
  const Jet j = jet(p, x);
  const double rhs = (p.n - 2) * p.T_c * std::exp(2.0 / (p.n - 2) * j.log_u);
  return j.grad[p.n - 1] / rhs - 1.0;
}

Eigen::MatrixXd einstein_residual(const BubbleParams& p, std::span<const double> x) {
  const Jet j = jet(p, x);
  const double c_n = (p.n - 2.0) / (4.0 * (p.n - 1.0));
  const Eigen::MatrixXd gg = j.grad * j.grad.transpose();
  // Everything carries a common factor u^2.
  Eigen::MatrixXd lhs = gg - 2.0 * c_n * (gg + j.hess);
  lhs.diagonal().array() -= lhs.trace() / p.n;
  return lhs / j.grad.squaredNorm();
}

double eval_kernel(const BubbleParams& p, int a, KernelVariant variant,
                   std::span<const double> x) {
  if (a < 1 || a > p.n) throw Error(ErrorCode::domain, "kernel index must lie in 1..n");
  const Shifted s = shift(p, x);
  const double power = variant == KernelVariant::interior ? 0.5 * (p.n + 2) : 0.5 * p.n;
  double numer;
  if (a < p.n) {
    numer = 2.0 * p.eps * s.y[a - 1];
  } else {
    const double xn = x[p.n - 1];
    double tangential = 0.0;
    for (int i = 0; i < p.n - 1; ++i) tangential += s.y[i] * s.y[i];
    numer = (1.0 + p.T_c * p.T_c) * p.eps * p.eps - xn * xn - tangential;
  }
  return numer / s.D * std::exp(power * (std::log(p.eps) - std::log(s.D)));
}

KernelNormReport kernel_norm_constancy(int n, double T_c, int a,
                                       std::span<const KernelSample> samples) {
  if (n < 5) throw Error(ErrorCode::domain, "kernel norms need n >= 5");
  if (!(T_c < 0.0)) throw Error(ErrorCode::domain, "kernel norms need T_c < 0");
  if (a < 1 || a > n) throw Error(ErrorCode::domain, "kernel index must lie in 1..n");
  KernelNormReport rep;
  rep.n = n;
  rep.T_c = T_c;
  rep.a = a;

  const int m = n - 1;
  const bool tangential = a < n;
  const double p_in = 2.0 * n / (n + 2.0);
  const double p_bd = 2.0 * (n - 1.0) / n;
  // Angular factor: int_{S^{m-1}} |w_1|^p for tangential kernels, |S^{m-1}| otherwise.
  auto angular = [&](double p) {
    if (!tangential) return specfun::sphere_area(m);
    return 2.0 * std::exp(boost::math::lgamma(0.5 * (p + 1.0)) + 0.5 * (m - 1) * std::log(std::numbers::pi) -
                          boost::math::lgamma(0.5 * (m + p)));
  };

  for (const KernelSample& smp : samples) {
    BubbleParams bp{n, T_c, smp.xi, smp.eps};
    bp.validate();
    const double eps = smp.eps;
    const double kink = std::sqrt(1.0 + T_c * T_c) * eps;
    // Radial profile with the angular part stripped: y' = rho e_1 (tangential)
    // or any direction (normal), evaluated at x' = xi + y'.
    auto profile = [&](double rho, double xn, KernelVariant v) {
      std::vector<double> x(bp.xi);
      x.push_back(xn);
      x[tangential ? a - 1 : 0] += rho;
      const double k = eval_kernel(bp, a, v, x);
      return tangential ? std::fabs(k) / rho : std::fabs(k);
    };
    const double s_exp = tangential ? 1.0 : 0.0;
    QuadratureSpec inner{1e-300, 1e-11, 4000, specfun::Transform::semi_infinite_rational, eps};
    QuadratureSpec outer{1e-300, 1e-10, 4000, specfun::Transform::semi_infinite_rational, eps};

    auto radial_integral = [&](double xn, double p, KernelVariant v) {
      auto g = [&](double rho) {
        if (rho == 0.0) return 0.0;
        return std::pow(rho, m - 1 + s_exp * p) * std::pow(profile(rho, xn, v), p);
      };
      double total = 0.0;
      double start = 0.0;
      if (!tangential && xn < kink) {
        const double rk = std::sqrt(kink * kink - xn * xn);
        const auto r1 = specfun::quad_1d(g, 0.0, rk, inner);
        rep.converged = rep.converged && r1.converged;
        total += r1.value;
        start = rk;
      }
      QuadratureSpec tail = inner;
      tail.scale = std::max(start, std::hypot(eps, xn));  // decay length in rho
      const auto r2 = specfun::quad_1d(g, start, specfun::kInfinity, tail);
      rep.converged = rep.converged && r2.converged;
      return total + r2.value;
    };

    auto outer_fn = [&](double xn) { return radial_integral(xn, p_in, KernelVariant::interior); };
    double interior = 0.0;
    double start = 0.0;
    if (!tangential) {
      const auto r = specfun::quad_1d(outer_fn, 0.0, kink, outer);
      rep.converged = rep.converged && r.converged;
      interior += r.value;
      start = kink;
    }
    QuadratureSpec outer_tail = outer;
    outer_tail.scale = std::max(eps, start);
    const auto r = specfun::quad_1d(outer_fn, start, specfun::kInfinity, outer_tail);
    rep.converged = rep.converged && r.converged;
    interior += r.value;
    interior *= angular(p_in);

    const double boundary = angular(p_bd) * radial_integral(0.0, p_bd, KernelVariant::boundary_hat);
    rep.interior_norms.push_back(std::pow(interior, 1.0 / p_in));
    rep.boundary_norms.push_back(std::pow(boundary, 1.0 / p_bd));
  }
  rep.interior_spread = spread(rep.interior_norms);
  rep.boundary_spread = spread(rep.boundary_norms);
  return rep;
}

}  // namespace blowup::bubble
