#include <cmath>

#include <gtest/gtest.h>

#include "blowup/bubble.hpp"
#include "blowup/error.hpp"
#include "blowup/sampling.hpp"
#include "oracles.hpp"

using namespace blowup;
using namespace blowup::bubble;

namespace {

BubbleParams random_params(Sampler& s, int n) {
  BubbleParams p{n, -s.uniform(0.1, 3.0), std::vector<double>(n - 1), s.uniform(0.5, 2.0)};
  for (double& v : p.xi) v = s.uniform(-1.0, 1.0);
  return p;
}

std::vector<double> point_near(Sampler& s, const BubbleParams& p) {
  std::vector<double> x = s.in_half_ball(p.n, 3.0 * p.eps);
  for (int i = 0; i < p.n - 1; ++i) x[i] += p.xi[i];
  x[p.n - 1] = std::max(x[p.n - 1], 1e-3 * p.eps);
  return x;
}

// Direct transcription of the bubble for modest n.
double u_direct(const BubbleParams& p, const std::vector<double>& x) {
  double d = p.eps * p.eps + std::pow(x[p.n - 1] - p.T_c * p.eps, 2);
  for (int i = 0; i < p.n - 1; ++i) d += std::pow(x[i] - p.xi[i], 2);
  return std::pow(p.eps / d, 0.5 * (p.n - 2));
}

}  // namespace

TEST(Bubble, ValueAtOrigin) {
  BubbleParams p{4, -1.0, {0.0, 0.0, 0.0}, 1.0};
  std::vector<double> x(4, 0.0);
  EXPECT_DOUBLE_EQ(eval_bubble(p, x), 0.5);
}

TEST(Bubble, MatchesDirectFormula) {
  Sampler s(3);
  for (int n : {3, 5, 9}) {
    const BubbleParams p = random_params(s, n);
    const auto x = point_near(s, p);
    EXPECT_NEAR(eval_bubble(p, x), u_direct(p, x), 1e-14 * u_direct(p, x));
  }
}

TEST(Bubble, EpsilonScaling) {
  Sampler s(5);
  const int n = 7;
  for (int t = 0; t < 20; ++t) {
    const double eps = s.uniform(0.3, 3.0);
    BubbleParams p1{n, -0.8, std::vector<double>(n - 1, 0.0), 1.0};
    BubbleParams pe = p1;
    pe.eps = eps;
    auto x = s.in_half_ball(n, 2.0);
    auto ex = x;
    for (double& v : ex) v *= eps;
    EXPECT_NEAR(eval_bubble(pe, ex), std::pow(eps, -0.5 * (n - 2)) * eval_bubble(p1, x),
                1e-13 * eval_bubble(pe, ex));
  }
}

TEST(Bubble, RadialSymmetryAndDecay) {
  BubbleParams p{6, -1.0, std::vector<double>(5, 0.0), 1.0};
  std::vector<double> a{0.6, 0.8, 0, 0, 0, 0.4}, b{0, 0, 0, 0, 1.0, 0.4};
  EXPECT_NEAR(eval_bubble(p, a), eval_bubble(p, b), 1e-15);
  double prev = eval_bubble(p, std::vector<double>{0, 0, 0, 0, 0, 0});
  for (double r = 0.5; r < 20; r += 0.5) {
    std::vector<double> x{r, 0, 0, 0, 0, 0};
    const double v = eval_bubble(p, x);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Bubble, HighDimensionStaysInLogSpace) {
  BubbleParams p{62, -1.0, std::vector<double>(61, 0.0), 1.0};
  std::vector<double> x(62, 0.0);
  x[0] = 1e4;
  EXPECT_NEAR(log_eval(p, x), -30.0 * std::log(1e8 + 2.0), 1e-9);
}

TEST(Bubble, Validation) {
  BubbleParams p{5, 1.0, std::vector<double>(4, 0.0), 1.0};
  EXPECT_THROW(p.validate(), Error);
  p.T_c = -1.0;
  p.eps = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p.eps = 1.0;
  p.xi.pop_back();
  EXPECT_THROW(p.validate(), Error);
}

TEST(BubbleJet, MatchesFiniteDifferences) {
  Sampler s(7);
  for (int n : {5, 13}) {
    for (int t = 0; t < 10; ++t) {
      const BubbleParams p = random_params(s, n);
      const auto x = point_near(s, p);
      const Jet j = jet(p, x);
      const double h = 1e-5 * p.eps;
      for (int i = 0; i < n; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (log_eval(p, xp) - log_eval(p, xm)) / (2 * h);  // d log u
        EXPECT_NEAR(j.grad(i), fd, 1e-6 * (std::fabs(fd) + 1.0 / p.eps));
        // Hessian row: d(grad u / u) = hess/u - grad grad / u^2.
        const Jet jp = jet(p, xp), jm = jet(p, xm);
        const Eigen::VectorXd dg = (jp.grad - jm.grad) / (2 * h);
        const Eigen::VectorXd expected = j.hess.row(i).transpose() - j.grad(i) * j.grad;
        EXPECT_LE((dg - expected).cwiseAbs().maxCoeff(), 1e-6 * (expected.norm() + 1.0 / (p.eps * p.eps)));
      }
    }
  }
}

TEST(BubbleResiduals, InteriorBoundaryEinstein) {
  for (int n : {5, 13, 62}) {
    Sampler s(100 + n);
    double wi = 0, wb = 0, we = 0;
    for (int t = 0; t < 100; ++t) {
      const BubbleParams p = random_params(s, n);
      const auto x = point_near(s, p);
      wi = std::max(wi, std::fabs(interior_residual(p, x)));
      wb = std::max(wb, std::fabs(boundary_residual(p, std::vector<double>(x.begin(), x.end() - 1))));
      we = std::max(we, einstein_residual(p, x).cwiseAbs().maxCoeff());
    }
    EXPECT_LE(wi, 1e-9) << n;
    EXPECT_LE(wb, 1e-10) << n;
    EXPECT_LE(we, 1e-10) << n;
  }
}

TEST(BubbleResiduals, TranslationInvariance) {
  BubbleParams p{7, -0.7, std::vector<double>(6, 0.0), 1.3};
  BubbleParams q = p;
  for (int i = 0; i < 6; ++i) q.xi[i] = 0.5 * i;
  std::vector<double> x{0.2, -0.1, 0.4, 0.3, 0.0, 0.1, 0.8}, y = x;
  for (int i = 0; i < 6; ++i) y[i] += q.xi[i];
  EXPECT_NEAR(interior_residual(p, x), interior_residual(q, y), 1e-14);
}

TEST(BubbleResiduals, BoundaryAtCenterAndSign) {
  Sampler s(9);
  for (int n : {5, 13, 62}) {
    const BubbleParams p = random_params(s, n);
    EXPECT_LE(std::fabs(boundary_residual(p, p.xi)), 1e-12);
    std::vector<double> x = p.xi;
    x.push_back(0.0);
    EXPECT_LT(jet(p, x).grad(n - 1), 0.0);
  }
}

TEST(BubbleResiduals, EinsteinOffDiagonalOnAxis) {
  BubbleParams p{6, -1.0, std::vector<double>(5, 0.0), 1.0};
  std::vector<double> x{0, 0, 0, 0, 0, 2.5};
  const Eigen::MatrixXd E = einstein_residual(p, x);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) {
        EXPECT_LE(std::fabs(E(i, j)), 1e-15);
      }
}

TEST(Kernel, TangentialVanishesAtCenter) {
  BubbleParams p{6, -1.0, {0.1, 0.2, 0.3, 0.4, 0.5}, 1.2};
  std::vector<double> x = p.xi;
  x.push_back(0.7);
  for (int a = 1; a < 6; ++a) EXPECT_EQ(eval_kernel(p, a, KernelVariant::interior, x), 0.0);
}

TEST(Kernel, NormalKernelZeroSet) {
  const double T = -1.5;
  BubbleParams p{5, T, std::vector<double>(4, 0.0), 1.0};
  const double R = std::sqrt(1.0 + T * T);
  std::vector<double> on{0.6 * R, 0.0, 0.0, 0.0, 0.8 * R};
  EXPECT_NEAR(eval_kernel(p, 5, KernelVariant::interior, on), 0.0, 1e-14);
  std::vector<double> inside{0.0, 0.0, 0.0, 0.0, 0.5 * R}, outside{0.0, 0.0, 0.0, 0.0, 2.0 * R};
  EXPECT_GT(eval_kernel(p, 5, KernelVariant::interior, inside), 0.0);
  EXPECT_LT(eval_kernel(p, 5, KernelVariant::interior, outside), 0.0);
}

TEST(Kernel, ProportionalToXiDerivative) {
  Sampler s(12);
  for (int t = 0; t < 20; ++t) {
    const int n = 7;
    BubbleParams p = random_params(s, n);
    const auto x = point_near(s, p);
    const int i = 1 + static_cast<int>(s.uniform() * (n - 1));
    const double h = 1e-6;
    BubbleParams pp = p, pm = p;
    pp.xi[i - 1] += h;
    pm.xi[i - 1] -= h;
    const double du = (eval_bubble(pp, x) - eval_bubble(pm, x)) / (2 * h);
    const double u = eval_bubble(p, x);
    const double expected = 2 * p.eps / (n - 2.0) * std::pow(u, 4.0 / (n - 2)) * du;
    const double got = eval_kernel(p, i, KernelVariant::interior, x);
    EXPECT_NEAR(got, expected, 1e-6 * std::fabs(expected) + 1e-12);
  }
}

TEST(Kernel, RejectsBadIndex) {
  BubbleParams p{5, -1.0, std::vector<double>(4, 0.0), 1.0};
  std::vector<double> x(5, 0.1);
  EXPECT_THROW(eval_kernel(p, 0, KernelVariant::interior, x), Error);
  EXPECT_THROW(eval_kernel(p, 6, KernelVariant::interior, x), Error);
}

TEST(KernelNorm, ConstantInCenterAndScale) {
  const int n = 13;
  const std::vector<double> xi(n - 1, 0.4);
  std::vector<double> xi2 = xi;
  for (double& v : xi2) v *= 2;
  const std::vector<KernelSample> samples{{xi, 1.0}, {xi2, 3.0}, {std::vector<double>(n - 1, 0.0), 0.5}};
  for (int a : {1, n}) {
    const KernelNormReport r = kernel_norm_constancy(n, -1.0, a, samples);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.interior_spread, 1e-6) << a;
    EXPECT_LE(r.boundary_spread, 1e-6) << a;
  }
  const std::vector<KernelSample> scales{{std::vector<double>(n - 1, 0.0), 0.5},
                                         {std::vector<double>(n - 1, 0.0), 1.0},
                                         {std::vector<double>(n - 1, 0.0), 2.0}};
  const KernelNormReport r = kernel_norm_constancy(n, -1.0, 1, scales);
  EXPECT_LE(r.interior_spread, 1e-6);
}

TEST(KernelNorm, BoundaryNormAgainstIndependentQuadrature) {
  // Normal kernel on the boundary is radial in x'; integrate |k|^p rho^{n-2}
  // against the sphere measure with an independent rule split at the zero.
  const int n = 7;
  const double T = -0.6, p = 2.0 * (n - 1) / n;
  BubbleParams bp{n, T, std::vector<double>(n - 1, 0.0), 1.0};
  auto g = [&](double rho) {
    std::vector<double> x(n, 0.0);
    x[0] = rho;
    const double v = std::pow(rho, n - 2) * std::pow(std::fabs(eval_kernel(bp, n, KernelVariant::boundary_hat, x)), p);
    return std::isfinite(v) ? v : 0.0;  // inf * 0 far out in the tail
  };
  const double kink = std::sqrt(1 + T * T);
  const double area = 2 * std::pow(M_PI, 0.5 * (n - 1)) / std::tgamma(0.5 * (n - 1));
  double ref = 0.0;
  {
    boost::math::quadrature::tanh_sinh<double> q;
    ref += q.integrate(g, 0.0, kink);
    boost::math::quadrature::exp_sinh<double> e;
    ref += e.integrate([&](double t) { return g(kink + t); }, 0.0, std::numeric_limits<double>::infinity());
  }
  ref = std::pow(area * ref, 1.0 / p);
  const std::vector<KernelSample> one{{std::vector<double>(n - 1, 0.0), 1.0}};
  const KernelNormReport r = kernel_norm_constancy(n, T, n, one);
  EXPECT_NEAR(r.boundary_norms[0], ref, 1e-8 * ref);
}
