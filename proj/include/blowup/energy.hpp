#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blowup/curvature.hpp"
#include "blowup/polynomial.hpp"

namespace blowup::energy {

/// lhs is the exact sphere integral from the monomial expansion, rhs the
/// closed form in terms of T_pq and the nondegeneracy scalar.
struct IdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs| / max(|lhs|, |rhs|, b) where b = (X_pp + X_qq) / 2 bounds the
  /// off-diagonal entries; 0 when everything vanishes.
  double rel_err = 0.0;
};

/// int_{S_r} sum (d_l H_ik)^2 x_p x_q. Indices p, q are zero based.
IdentityResult moment_identity_A(const curvature::WeylLike& W, double r, int p, int q);
/// int_{S_r} sum H_ik^2 x_p x_q.
IdentityResult moment_identity_B(const curvature::WeylLike& W, double r, int p, int q);
/// int_{S_r} sum (d_l Hbar_ik)^2 x_p x_q with Hbar = f(|x|^2) H.
IdentityResult moment_identity_C(const curvature::WeylLike& W, const ReductionPolynomial& f,
                                 double r, int p, int q);
/// int_{S_r} sum (d_l Hbar_ik)^2.
IdentityResult moment_identity_D(const curvature::WeylLike& W, const ReductionPolynomial& f,
                                 double r);

struct IdentityRow {
  char identity = 'A';
  int p = -1, q = -1;  // -1 for identity D
  IdentityResult result;
};
/// Identities A, B, C for every p <= q plus D, sharing one expansion.
std::vector<IdentityRow> moment_identity_table(const curvature::WeylLike& W,
                                               const ReductionPolynomial& f, double r);

/// Constant K in F(0, eps) = -K I(eps^2); I in actual units.
double energy_constant(int n, double nondeg);

/// -K I(eps^2) through the moments c_q.
double F0_closed(double eps, int n, double T_c, double nondeg, const ReductionPolynomial& f);

struct QuadValue {
  double value = 0.0;
  bool converged = true;
};
/// The defining double integral over (r, t), inner r tolerance 1e-9 and
/// outer t tolerance 1e-8, evaluated in log form.
QuadValue F0_quadrature(double eps, int n, double T_c, double nondeg,
                        const ReductionPolynomial& f);

struct ProfileSample {
  double eps = 0.0;
  double F_closed = 0.0;
  double F_quadrature = 0.0;
  double rel_diff = 0.0;
  bool converged = true;
};
struct EnergyProfile {
  int n = 0;
  double T_c = 0.0;
  double nondeg = 0.0;
  ReductionPolynomial f;
  std::vector<ProfileSample> samples;
};
EnergyProfile energy_profile(int n, double T_c, double nondeg, const ReductionPolynomial& f,
                             std::span<const double> eps_values, int threads = 0);

/// Radial-temporal integrals in the xi-Hessian:
///   JJ = int int eps^{n-2} D^{-n} r^{n+4} (2 f f' + r^2 f'^2)
///   KK = int int eps^{n-2} D^{1-n} r^{n+4} f'^2
/// with D = eps^2 + (t - T_c eps)^2 + r^2.
double hessian_JJ_closed(double eps, int n, double T_c, const ReductionPolynomial& f);
double hessian_KK_closed(double eps, int n, double T_c, const ReductionPolynomial& f);
QuadValue hessian_JJ_quadrature(double eps, int n, double T_c, const ReductionPolynomial& f);
QuadValue hessian_KK_quadrature(double eps, int n, double T_c, const ReductionPolynomial& f);

struct HessianReport {
  double eps = 0.0;
  Eigen::MatrixXd matrix;  // (n-1) x (n-1)
  double term_A_scalar = 0.0;  // multiplies T_pq
  double term_B_scalar = 0.0;  // multiplies delta_pq (J part)
  double term_C_scalar = 0.0;  // multiplies delta_pq (f'^2 part)
  double JJ_closed = 0.0, JJ_quadrature = 0.0, JJ_rel_diff = 0.0;
  double KK_closed = 0.0, KK_quadrature = 0.0, KK_rel_diff = 0.0;
  double min_eigenvalue = 0.0;
  bool converged = true;
};
/// Requires W.dim() == n - 1 and n > 9. Quadrature cross-checks are skipped
/// when `with_quadrature` is false.
HessianReport hessian_xi(double eps, int n, double T_c, const curvature::WeylLike& W,
                         const ReductionPolynomial& f, bool with_quadrature = true);

struct LocalMinReport {
  double F0_at_1 = 0.0;
  double dF0_deps = 0.0;
  double d2F0_deps2 = 0.0;
  double hessian_min_eigenvalue = 0.0;
  double minimizer = 0.0;  // golden section on [0.5, 2]
  /// F0 is unbounded below as eps grows (I(s) ~ s^{2d+2}), so [0.5, 2] can
  /// contain a second descent. The local bracket stops at the next critical
  /// point of I beyond s = 1, where F0 is unimodal.
  double local_bracket_hi = 0.0;
  double local_minimizer = 0.0;
  bool first_order_ok = false;     // |dF0/deps(1)| <= 1e-9 |F0(1)|
  bool second_order_ok = false;    // d2F0/deps2(1) > 0
  bool hessian_ok = false;         // min eigenvalue > 0
  bool minimizer_ok = false;       // |minimizer - 1| <= 1e-6
  bool local_minimizer_ok = false; // |local_minimizer - 1| <= 1e-6
  bool passed() const { return first_order_ok && second_order_ok && hessian_ok && minimizer_ok; }
  bool strict_local_min() const {
    return first_order_ok && second_order_ok && hessian_ok && local_minimizer_ok;
  }
};
LocalMinReport local_min_check(int n, double T_c, const curvature::WeylLike& W,
                               const ReductionPolynomial& f);

/// Golden-section minimizer of g on [lo, hi] to absolute tolerance tol.
double golden_section_minimize(const std::function<double(double)>& g, double lo, double hi,
                               double tol);

}  // namespace blowup::energy
