#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace blowup::bubble {

/// u(x) = (eps / (eps^2 + (x_n - T_c eps)^2 + |x' - xi|^2))^{(n-2)/2}
struct BubbleParams {
  int n = 3;
  double T_c = -1.0;
  std::vector<double> xi;  // n - 1 entries
  double eps = 1.0;

  /// Throws Error{domain} on n < 3, eps <= 0, T_c >= 0 or a wrong xi length.
  void validate() const;
};

double log_eval(const BubbleParams& p, std::span<const double> x);
double eval_bubble(const BubbleParams& p, std::span<const double> x);

/// Derivatives divided by u, so they stay finite where u itself underflows.
struct Jet {
  double log_u = 0.0;
  Eigen::VectorXd grad;  // grad u / u
  Eigen::MatrixXd hess;  // hess u / u
};
Jet jet(const BubbleParams& p, std::span<const double> x);

/// -Delta u / (n (n-2) u^{(n+2)/(n-2)}) - 1 with the analytic Laplacian.
double interior_residual(const BubbleParams& p, std::span<const double> x);

/// (du/dx_n) / ((n-2) T_c u^{n/(n-2)}) - 1 at (x', 0).
double boundary_residual(const BubbleParams& p, std::span<const double> x_prime);

/// Trace-free part of du du - c_n d d(u^2), divided by |grad u|^2.
Eigen::MatrixXd einstein_residual(const BubbleParams& p, std::span<const double> x);

enum class KernelVariant { interior, boundary_hat };

/// u_{(xi,eps,a)} or its hatted variant, a in 1..n.
double eval_kernel(const BubbleParams& p, int a, KernelVariant variant,
                   std::span<const double> x);

struct KernelSample {
  std::vector<double> xi;
  double eps = 1.0;
};

struct KernelNormReport {
  int n = 0;
  double T_c = 0.0;
  int a = 0;
  std::vector<double> interior_norms;  // L^{2n/(n+2)} over the half space
  std::vector<double> boundary_norms;  // L^{2(n-1)/n} of the hatted kernel on the boundary
  double interior_spread = 0.0;        // (max - min) / mean
  double boundary_spread = 0.0;
  bool converged = true;
};

/// Norms of the kernel by nested quadrature at each sample.
KernelNormReport kernel_norm_constancy(int n, double T_c, int a,
                                       std::span<const KernelSample> samples);

}  // namespace blowup::bubble
