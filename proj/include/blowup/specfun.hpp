#pragma once

#include <span>

#include "blowup/quadrature.hpp"

namespace blowup::specfun {

double log_beta(double p, double q);
/// B(p, q) evaluated through log-gamma; throws Error{domain} unless p, q > 0.
double beta(double p, double q);

/// log of |S^{m-1}| = 2 pi^{m/2} / Gamma(m/2).
double log_sphere_area(int m);
/// Measure of the unit sphere in R^m. Note that omega_n = |S^n| is
/// sphere_area(n + 1).
double sphere_area(int m);

enum class MomentMethod { series, recursion, quadrature };

const char* to_string(MomentMethod method) noexcept;

/// I_alpha(a) = int_a^inf (1 + r^2)^{-alpha} dr.
///
/// Values for large alpha and a leave the double range, so the moment is
/// carried as a logarithm; `value` is exp(log_value) and may underflow to 0.
struct HalfLineMoment {
  double alpha = 0.0;
  double a = 0.0;
  double log_value = 0.0;
  double value = 0.0;
  MomentMethod method = MomentMethod::series;
};

/// Series a * sum_k t_k (1 + a^2)^{-(alpha + k)} obtained by iterating the
/// integration-by-parts recursion. Throws Error{slow_convergence} for
/// a <= 0.05 and Error{domain} for alpha <= 1/2.
HalfLineMoment half_line_moment_series(double alpha, double a);

/// Backward recurrence I_b = 2b/(2b-1) I_{b+1} + a (1+a^2)^{-b}/(2b-1),
/// started from a zero seed far enough above alpha that the seed error is
/// below rounding. Same preconditions as the series.
HalfLineMoment half_line_moment_recursion(double alpha, double a);

/// Adaptive quadrature of the defining integral. Valid for any a >= 0.
HalfLineMoment half_line_moment_quadrature(double alpha, double a,
                                           const QuadratureSpec& spec = {});

/// Series for a > 0.05, quadrature otherwise.
HalfLineMoment half_line_moment(double alpha, double a);

/// |I_alpha - 2 alpha/(2 alpha - 1) I_{alpha+1} - a (1+a^2)^{-alpha}/(2 alpha - 1)|
/// with both moments from quadrature. The terms are formed after multiplying
/// through by (1+a^2)^alpha, so `relative` stays meaningful when I_alpha(a)
/// itself underflows.
struct RecursionResidual {
  double residual = 0.0;  // absolute
  double moment = 0.0;    // I_alpha(a) by quadrature
  double relative = 0.0;  // residual / moment
};
RecursionResidual half_line_moment_recursion_check(double alpha, double a);

/// c_q = int_0^inf (1 + (t - T_c)^2)^{(5 + 2q - n)/2} dt = I_{(n-5-2q)/2}(-T_c).
/// Throws Error{divergent_moment} when n - 5 - 2q <= 1, Error{domain} when
/// T_c >= 0.
HalfLineMoment c_q(int n, double T_c, int q);

/// int_0^inf r^s (A + r^2)^{-p} dr = 1/2 A^{(s+1)/2 - p} B((s+1)/2, p - (s+1)/2).
double radial_beta_moment(double s, double p, double A);
double log_radial_beta_moment(double s, double p, double A);

/// Exact int_{S^{m-1}} prod x_i^{e_i} d sigma over the unit sphere.
double monomial_sphere_moment(int m, std::span<const int> exponents);

}  // namespace blowup::specfun
