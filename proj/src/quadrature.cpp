#include "blowup/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "blowup/error.hpp"

namespace blowup::specfun {
namespace {

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One G10/K21 panel with |K - G| as error estimate. The rule is applied
// by hand: Boost's single-panel error is not scaled by the panel width.
// Odd Kronrod nodes are the Gauss nodes.
template <typename G>
Panel integrate_panel(const G& g, double lo, double hi) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& x = gauss_kronrod<double, 21>::abscissa();
  const auto& wk = gauss_kronrod<double, 21>::weights();
  const auto& wg = gauss<double, 10>::weights();
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double k = wk[0] * g(c), gs = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = g(c - h * x[i]) + g(c + h * x[i]);
    k += wk[i] * pair;
    if (i % 2 == 1) gs += wg[i / 2] * pair;
  }
  return {lo, hi, h * k, std::abs(h * (k - gs))};
}

template <typename G>
QuadResult adaptive(const G& g, double lo, double hi, const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  heap.push(integrate_panel(g, lo, hi));
  double total = heap.top().value;
  double total_err = heap.top().error;
  int panels = 1;
  bool stuck = false;

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_err > target() && panels < spec.max_subdivisions) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      stuck = true;
      break;
    }
    heap.pop();
    Panel left = integrate_panel(g, worst.lo, mid);
    Panel right = integrate_panel(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum to shed the drift of the running totals.
  QuadResult result;
  result.subdivisions = panels;
  double sum = 0.0, comp = 0.0, err = 0.0;
  while (!heap.empty()) {
    const double y = heap.top().value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += heap.top().error;
    heap.pop();
  }
  result.value = sum;
  result.error_estimate = err;
  result.converged =
      !stuck && std::isfinite(sum) &&
      err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum));
  return result;
}

}  // namespace

QuadResult quad_1d(const std::function<double(double)>& f, double lo, double hi,
                   const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1) {
    throw Error(ErrorCode::config, "quad_1d: tolerances must be > 0 and max_subdivisions >= 1");
  }
  if (!(hi > lo)) {
    if (hi == lo) return {0.0, 0.0, true, 0};
    throw Error(ErrorCode::domain, "quad_1d: empty interval");
  }
  if (std::isfinite(hi)) {
    return adaptive(f, lo, hi, spec);
  }

  const double s = spec.scale > 0.0 ? spec.scale : 1.0;
  if (spec.transform == Transform::semi_infinite_tan) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    auto g = [&](double u) {
      const double c = std::cos(half_pi * u);
      if (c <= 0.0) return 0.0;
      const double x = lo + s * std::tan(half_pi * u);
      return f(x) * s * half_pi / (c * c);
    };
    return adaptive(g, 0.0, 1.0, spec);
  }
  auto g = [&](double u) {
    const double w = 1.0 - u;
    if (w <= 0.0) return 0.0;
    const double x = lo + s * u / w;
    return f(x) * s / (w * w);
  };
  return adaptive(g, 0.0, 1.0, spec);
}

double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureSpec& spec) {
  const QuadResult r = quad_1d(f, lo, hi, spec);
  if (!r.converged) {
    throw Error(ErrorCode::not_converged,
                "quadrature did not converge (estimate " + std::to_string(r.value) +
                    ", error " + std::to_string(r.error_estimate) + ")");
  }
  return r.value;
}

}  // namespace blowup::specfun
