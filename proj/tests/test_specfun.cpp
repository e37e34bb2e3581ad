#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "blowup/error.hpp"
#include "blowup/specfun.hpp"
#include "oracles.hpp"

using namespace blowup;
using namespace blowup::specfun;
using oracle::pi;
using oracle::rel;

namespace {

void expect_error(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Beta, SmallExactValues) {
  EXPECT_NEAR(beta(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(beta(3, 4), 1.0 / 60.0, 1e-16);
  EXPECT_LT(rel(beta(0.5, 0.5), pi), 1e-14);
}

TEST(Beta, MatchesQuadratureOfDefiningIntegral) {
  const double q = oracle::integrate(
      [](double t) { return std::pow(t, 29.5) * std::pow(1.0 - t, 27.5); }, 0.0, 1.0);
  EXPECT_LT(rel(beta(30.5, 28.5), q), 1e-12);
}

TEST(Beta, LargeArgumentsStayFinite) {
  const double lb = log_beta(150.5, 140.5);
  EXPECT_TRUE(std::isfinite(lb));
  const double ref = oracle::log_gamma_step(150.5) + oracle::log_gamma_step(140.5) -
                     oracle::log_gamma_step(291.0);
  EXPECT_LT(std::fabs(lb - ref), 1e-11 * std::fabs(ref));
}

TEST(Beta, RejectsNonPositiveArguments) {
  expect_error(ErrorCode::domain, [] { beta(0.0, 1.0); });
  expect_error(ErrorCode::domain, [] { beta(1.0, -2.0); });
}

TEST(SphereArea, LowDimensions) {
  EXPECT_LT(rel(sphere_area(1), 2.0), 1e-15);
  EXPECT_LT(rel(sphere_area(2), 2 * pi), 1e-15);
  EXPECT_LT(rel(sphere_area(3), 4 * pi), 1e-15);
  EXPECT_LT(rel(sphere_area(4), 2 * pi * pi), 1e-15);
}

TEST(SphereArea, HighDimensionAgainstRecursiveGamma) {
  const double ref = 2.0 * std::pow(pi, 30.5) / oracle::gamma_step(30.5);
  EXPECT_LT(rel(sphere_area(61), ref), 1e-13);
}

TEST(SphereArea, RejectsNonPositiveDimension) {
  expect_error(ErrorCode::domain, [] { sphere_area(0); });
}

TEST(HalfLineMoment, ArctanSpotValues) {
  EXPECT_NEAR(half_line_moment_series(1, 1).value, pi / 4, 1e-12 * pi / 4);
  const double i4 = 5 * pi / 64 - 11.0 / 48;
  EXPECT_NEAR(half_line_moment_series(4, 1).value, i4, 1e-12 * i4);
  EXPECT_NEAR(half_line_moment_series(2, 1).value, pi / 8 - 0.25, 1e-12 * (pi / 8 - 0.25));
  EXPECT_NEAR(half_line_moment_recursion(4, 1).value, i4, 1e-12 * i4);
  EXPECT_NEAR(half_line_moment_quadrature(4, 1).value, i4, 1e-12 * i4);
}

TEST(HalfLineMoment, ClimbingArctanOracle) {
  for (int k = 1; k <= 6; ++k)
    for (double a : {0.1, 0.5, 1.0}) {
      const double ref = oracle::half_line_moment_arctan(k, a);
      EXPECT_LT(rel(half_line_moment_series(k, a).value, ref), 1e-11) << k << " " << a;
    }
}

TEST(HalfLineMoment, MethodsAgreeOnGrid) {
  double worst = 0.0;
  for (double alpha = 1.0; alpha <= 40.0; alpha += 1.5)
    for (double la = std::log(0.06); la <= std::log(100.0) + 1e-9;
         la += (std::log(100.0) - std::log(0.06)) / 14) {
      const double a = std::exp(la);
      const auto s = half_line_moment_series(alpha, a);
      const auto r = half_line_moment_recursion(alpha, a);
      const auto q = half_line_moment_quadrature(alpha, a);
      worst = std::max({worst, std::fabs(std::expm1(s.log_value - q.log_value)),
                        std::fabs(std::expm1(r.log_value - q.log_value)),
                        std::fabs(std::expm1(s.log_value - r.log_value))});
      EXPECT_EQ(s.method, MomentMethod::series);
      EXPECT_EQ(r.method, MomentMethod::recursion);
      EXPECT_EQ(q.method, MomentMethod::quadrature);
    }
  EXPECT_LE(worst, 1e-10);
}

TEST(HalfLineMoment, IndependentQuadratureOracle) {
  for (double alpha : {1.0, 2.5, 12.0, 28.5, 40.0})
    for (double a : {0.06, 0.5, 1.0, 7.0}) {
      const double ref = oracle::half_line_moment(alpha, a);
      EXPECT_LT(rel(half_line_moment(alpha, a).value, ref), 1e-10) << alpha << " " << a;
    }
}

TEST(HalfLineMoment, ValueBoundsOnGrid) {
  for (double alpha = 1.0; alpha <= 40.0; alpha += 3.0)
    for (double a : {0.06, 0.3, 2.0, 50.0}) {
      const double v = half_line_moment(alpha, a).value;
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, pi / 2);
    }
}

TEST(HalfLineMoment, RecursionResidual) {
  for (auto [alpha, a] : {std::pair{1.0, 1.0}, {28.5, 1.0}, {3.0, 0.1}}) {
    const auto r = half_line_moment_recursion_check(alpha, a);
    EXPECT_LE(r.relative, 1e-11) << alpha << " " << a;
  }
  double worst = 0.0;
  for (double alpha = 1.0; alpha <= 40.0; alpha += 3.0)
    for (double a : {0.06, 0.2, 1.0, 5.0, 30.0, 100.0})
      worst = std::max(worst, half_line_moment_recursion_check(alpha, a).relative);
  EXPECT_LE(worst, 1e-11);
}

TEST(HalfLineMoment, Preconditions) {
  expect_error(ErrorCode::slow_convergence, [] { half_line_moment_series(2.0, 0.05); });
  expect_error(ErrorCode::domain, [] { half_line_moment_series(0.5, 1.0); });
  // Below the switchover the dispatcher falls back to quadrature.
  EXPECT_EQ(half_line_moment(2.0, 0.01).method, MomentMethod::quadrature);
  EXPECT_LT(rel(half_line_moment(2.0, 0.01).value, oracle::half_line_moment_arctan(2, 0.01)), 1e-11);
}

TEST(Cq, ClosedFormsAtThirteen) {
  EXPECT_LT(rel(c_q(13, -1, 0).value, 5 * pi / 64 - 11.0 / 48), 1e-12);
  EXPECT_LT(rel(c_q(13, -1, 1).value, 3 * pi / 32 - 0.25), 1e-12);
}

TEST(Cq, HighDimensionAgainstQuadrature) {
  const auto c = c_q(62, -1, 2);
  EXPECT_DOUBLE_EQ(c.alpha, 26.5);
  EXPECT_LT(rel(c.value, oracle::half_line_moment(26.5, 1.0)), 1e-10);
}

TEST(Cq, DivergenceAndSign) {
  expect_error(ErrorCode::divergent_moment, [] { c_q(8, -1, 1); });
  expect_error(ErrorCode::domain, [] { c_q(20, 0.5, 0); });
  EXPECT_EQ(c_q(20, -0.01, 0).method, MomentMethod::quadrature);
}

TEST(RadialBetaMoment, Examples) {
  EXPECT_LT(rel(radial_beta_moment(0, 1, 1), pi / 2), 1e-14);
  EXPECT_LT(rel(radial_beta_moment(2, 2, 1), pi / 4), 1e-14);
  const double ref = oracle::integrate_half_line(
      [](double r) { return std::exp(66 * std::log(r) - 60 * std::log(2 + r * r)); }, 0.0);
  EXPECT_LT(rel(radial_beta_moment(66, 60, 2), ref), 1e-10);
}

TEST(RadialBetaMoment, RandomDrawsAgainstQuadrature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> S(-0.5, 12.0), extra(0.3, 8.0), Ad(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double s = S(rng), A = Ad(rng), p = 0.5 * (s + 1) + extra(rng);
    auto g = [&](double r) { return std::exp(s * std::log(r) - p * std::log(A + r * r)); };
    const double ref = oracle::integrate(g, 0.0, 1.0) + oracle::integrate_half_line(g, 1.0);
    EXPECT_LT(rel(radial_beta_moment(s, p, A), ref), 1e-9) << s << " " << p << " " << A;
  }
}

TEST(RadialBetaMoment, DivergentParameters) {
  expect_error(ErrorCode::domain, [] { radial_beta_moment(-1.0, 2.0, 1.0); });
  expect_error(ErrorCode::domain, [] { radial_beta_moment(3.0, 2.0, 1.0); });
  expect_error(ErrorCode::domain, [] { radial_beta_moment(1.0, 2.0, 0.0); });
}

TEST(MonomialSphereMoment, Examples) {
  const int e1[] = {2, 0}, e2[] = {2, 2, 0}, e3[] = {1, 2, 0, 0, 0};
  EXPECT_LT(rel(monomial_sphere_moment(2, e1), pi), 1e-15);
  EXPECT_LT(rel(monomial_sphere_moment(3, e2), 4 * pi / 15), 1e-15);
  EXPECT_EQ(monomial_sphere_moment(5, e3), 0.0);
}

TEST(MonomialSphereMoment, RandomDrawsAgainstSlicing) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int m = 2 + static_cast<int>(rng() % 5);
    std::vector<int> e(m);
    for (int& v : e) v = 2 * static_cast<int>(rng() % 4);
    EXPECT_LT(rel(monomial_sphere_moment(m, e), oracle::sphere_moment_by_slices(e)), 1e-9);
  }
}

TEST(MonomialSphereMoment, MonteCarloSanity) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  const int m = 4;
  const int e[] = {2, 4, 0, 2};
  double sum = 0.0;
  const int samples = 400000;
  for (int k = 0; k < samples; ++k) {
    double x[m], r2 = 0.0;
    for (double& v : x) {
      v = N(rng);
      r2 += v * v;
    }
    const double r = std::sqrt(r2);
    sum += std::pow(x[0] / r, 2) * std::pow(x[1] / r, 4) * std::pow(x[3] / r, 2);
  }
  const double mc = sum / samples * sphere_area(m);
  EXPECT_LT(rel(monomial_sphere_moment(m, e), mc), 0.03);
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(quad_1d([](double) { return 1.0; }, 0.0, 1.0).value, 1.0, 1e-15);
  const auto r = quad_1d([](double t) { return std::pow(1 + (t + 1) * (t + 1), -4); }, 0.0, kInfinity);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(rel(r.value, 5 * pi / 64 - 11.0 / 48), 1e-12);
  const auto s = quad_1d([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
  EXPECT_NEAR(s.value, 2.0, 1e-10);
}

TEST(Quadrature, BudgetExhaustionIsFlagged) {
  QuadratureSpec spec;
  spec.max_subdivisions = 1;
  const auto r = quad_1d([](double t) { return std::sin(200 * t); }, 0.0, 10.0, spec);
  EXPECT_FALSE(r.converged);
  expect_error(ErrorCode::not_converged,
               [&] { integrate_or_throw([](double t) { return std::sin(200 * t); }, 0.0, 10.0, spec); });
}

TEST(Quadrature, TanTransform) {
  QuadratureSpec spec;
  spec.transform = Transform::semi_infinite_tan;
  const auto r = quad_1d([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, kInfinity, spec);
  EXPECT_LT(rel(r.value, pi / 2), 1e-12);
}
