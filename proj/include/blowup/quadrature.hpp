#pragma once

#include <functional>
#include <limits>

namespace blowup::specfun {

enum class Transform { none, semi_infinite_rational, semi_infinite_tan };

/// Tolerances and domain handling for quad_1d.
///
/// For a half-line [lo, inf) the integrand is pulled back to [0, 1) with
/// x = lo + scale * u / (1 - u) (rational) or x = lo + scale * tan(pi u / 2).
/// `scale` should be of the order of the integrand's decay length.
struct QuadratureSpec {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
  Transform transform = Transform::semi_infinite_rational;
  double scale = 1.0;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int subdivisions = 0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over [lo, hi].
/// `hi` may be +infinity. Never throws on non-convergence: the best estimate
/// is returned with converged == false.
QuadResult quad_1d(const std::function<double(double)>& f, double lo, double hi,
                   const QuadratureSpec& spec = {});

/// Same as quad_1d, but throws Error{not_converged} when the budget runs out.
double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureSpec& spec = {});

}  // namespace blowup::specfun
