#include "blowup/energy.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/error.hpp"
#include "blowup/parallel.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/reduction.hpp"
#include "blowup/specfun.hpp"
#include "blowup/sphere_poly.hpp"

namespace blowup::energy {

namespace {

using curvature::WeylLike;

IdentityResult compare(double lhs, double rhs, double floor = 0.0) {
  const double scale = std::max({std::fabs(lhs), std::fabs(rhs), floor});
  return {lhs, rhs, scale == 0.0 ? 0.0 : std::fabs(lhs - rhs) / scale};
}

void check_pq(const WeylLike& W, int p, int q) {
  if (p < 0 || q < 0 || p >= W.dim() || q >= W.dim())
    throw Error(ErrorCode::domain, "identity indices must lie in [0, m)");
}

// Closed forms with n = m + 1. T is the contraction matrix, S the scalar.
struct Closed {
  int n;
  double area;
  Eigen::MatrixXd T;
  double S;

  explicit Closed(const WeylLike& W)
      : n(W.dim() + 1),
        area(specfun::sphere_area(W.dim())),
        T(curvature::contraction_T(W)),
        S(curvature::nondegeneracy_scalar(W)) {}

  double delta(int p, int q) const { return p == q ? 1.0 : 0.0; }

  double A(double r, int p, int q) const {
    return area * std::pow(r, n + 2) / ((n - 1.0) * (n + 1.0)) * (2.0 * T(p, q) + S * delta(p, q));
  }
  double B(double r, int p, int q) const {
    return area * std::pow(r, n + 4) / ((n - 1.0) * (n + 1.0) * (n + 3.0)) *
           (2.0 * T(p, q) + 0.5 * S * delta(p, q));
  }
  double C(const ReductionPolynomial& f, double r, int p, int q) const {
    const double s = r * r, fv = f(s), dv = f.derivative()(s);
    const double w1 = (n + 3.0) * fv * fv + 8.0 * s * fv * dv + 4.0 * s * s * dv * dv;
    const double w2 = (n + 3.0) * fv * fv + 4.0 * s * fv * dv + 2.0 * s * s * dv * dv;
    return area * std::pow(r, n + 2) / ((n - 1.0) * (n + 1.0) * (n + 3.0)) *
           (2.0 * T(p, q) * w1 + S * delta(p, q) * w2);
  }
  double D(const ReductionPolynomial& f, double r) const {
    const double s = r * r, fv = f(s), dv = f.derivative()(s);
    return area * std::pow(r, n) / ((n - 1.0) * (n + 1.0)) * S *
           ((n + 1.0) * fv * fv + 4.0 * s * fv * dv + 2.0 * s * s * dv * dv);
  }
};

// int_0^inf int_0^inf eps^{n-2} D^{pD} r^{pr} g(r^2) dr dt, D = eps^2 + (t - T_c eps)^2 + r^2.
QuadValue double_integral(double eps, int n, double T_c, double pD, double pr,
                          const ReductionPolynomial& g) {
  QuadValue out;
  const double log_eps = (n - 2) * std::log(eps);
  auto inner = [&](double t) {
    const double shift = t - T_c * eps;
    const double A = eps * eps + shift * shift;
    auto integrand = [&](double r) {
      if (r == 0.0) return 0.0;
      const double s = r * r;
      return g(s) * std::exp(log_eps + pr * std::log(r) + pD * std::log(A + s));
    };
    specfun::QuadratureSpec spec{1e-300, 1e-9, 2000, specfun::Transform::semi_infinite_rational,
                                 std::sqrt(A)};
    const specfun::QuadResult r = specfun::quad_1d(integrand, 0.0, specfun::kInfinity, spec);
    if (!r.converged) out.converged = false;
    return r.value;
  };
  specfun::QuadratureSpec spec{1e-300, 1e-8, 2000, specfun::Transform::semi_infinite_rational,
                               eps * std::sqrt(1.0 + T_c * T_c) / std::sqrt(double(n))};
  const specfun::QuadResult r = specfun::quad_1d(inner, 0.0, specfun::kInfinity, spec);
  out.value = r.value;
  out.converged = out.converged && r.converged;
  return out;
}

ReductionPolynomial alpha_poly(const ReductionPolynomial& f, int n) {
  return ReductionPolynomial(reduction::alpha_coeffs(f, n));
}

ReductionPolynomial beta_poly(const ReductionPolynomial& f) {
  std::vector<double> b = reduction::beta_coeffs(f);
  if (b.empty()) return {};
  return ReductionPolynomial(b);
}

double c_n(int n) { return (n - 2.0) / (4.0 * (n - 1.0)); }

void check_energy_domain(int n, const ReductionPolynomial& f) {
  if (n - 5 - 4 * f.degree() <= 1)
    throw Error(ErrorCode::divergent_moment, "need n - 5 - 4d > 1");
}

}  // namespace

// The weights are nonnegative, so |int g x_p x_q| <= (int g x_p^2 + int g x_q^2) / 2.
// Off-diagonal entries may vanish identically (T is a multiple of the
// identity for m = 4); the diagonal bound gives them a meaningful scale.
IdentityResult compare_pq(const sphere::Poly& g, double r, int p, int q, double closed) {
  const double bound = 0.5 * (std::fabs(g.sphere_integral(r, p, p)) +
                              std::fabs(g.sphere_integral(r, q, q)));
  return compare(g.sphere_integral(r, p, q), closed, bound);
}

IdentityResult moment_identity_A(const WeylLike& W, double r, int p, int q) {
  check_pq(W, p, q);
  const sphere::MomentOracle oracle(W, ReductionPolynomial::constant(1.0));
  return compare_pq(oracle.grad_h_squared(), r, p, q, Closed(W).A(r, p, q));
}

IdentityResult moment_identity_B(const WeylLike& W, double r, int p, int q) {
  check_pq(W, p, q);
  const sphere::MomentOracle oracle(W, ReductionPolynomial::constant(1.0));
  return compare_pq(oracle.h_squared(), r, p, q, Closed(W).B(r, p, q));
}

IdentityResult moment_identity_C(const WeylLike& W, const ReductionPolynomial& f, double r,
                                 int p, int q) {
  check_pq(W, p, q);
  const sphere::MomentOracle oracle(W, f);
  return compare_pq(oracle.grad_hbar_squared(), r, p, q, Closed(W).C(f, r, p, q));
}

IdentityResult moment_identity_D(const WeylLike& W, const ReductionPolynomial& f, double r) {
  const sphere::MomentOracle oracle(W, f);
  return compare(oracle.grad_hbar_squared().sphere_integral(r), Closed(W).D(f, r));
}

std::vector<IdentityRow> moment_identity_table(const WeylLike& W, const ReductionPolynomial& f,
                                               double r) {
  const sphere::MomentOracle oracle(W, f);
  const Closed closed(W);
  std::vector<IdentityRow> rows;
  const int m = W.dim();
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      rows.push_back({'A', p, q, compare_pq(oracle.grad_h_squared(), r, p, q, closed.A(r, p, q))});
      rows.push_back({'B', p, q, compare_pq(oracle.h_squared(), r, p, q, closed.B(r, p, q))});
      rows.push_back(
          {'C', p, q, compare_pq(oracle.grad_hbar_squared(), r, p, q, closed.C(f, r, p, q))});
    }
  rows.push_back({'D', -1, -1, compare(oracle.grad_hbar_squared().sphere_integral(r), closed.D(f, r))});
  return rows;
}

double energy_constant(int n, double nondeg) {
  return (n - 2.0) * specfun::sphere_area(n - 1) / (32.0 * (n - 1.0) * (n - 1.0) * (n + 1.0)) *
         specfun::beta(0.5 * (n - 1), 0.5 * (n - 3)) * nondeg;
}

double F0_closed(double eps, int n, double T_c, double nondeg, const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  if (!(eps > 0.0)) throw Error(ErrorCode::domain, "eps must be positive");
  return -energy_constant(n, nondeg) * reduction::I_of_s(eps * eps, n, T_c, f);
}

QuadValue F0_quadrature(double eps, int n, double T_c, double nondeg,
                        const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  if (!(eps > 0.0)) throw Error(ErrorCode::domain, "eps must be positive");
  if (!(T_c < 0.0)) throw Error(ErrorCode::domain, "T_c must be negative");
  const double pref =
      -c_n(n) * specfun::sphere_area(n - 1) / (4.0 * (n - 1.0) * (n + 1.0)) * nondeg;
  QuadValue v = double_integral(eps, n, T_c, 2.0 - n, n, alpha_poly(f, n));
  v.value *= pref;
  return v;
}

EnergyProfile energy_profile(int n, double T_c, double nondeg, const ReductionPolynomial& f,
                             std::span<const double> eps_values, int threads) {
  EnergyProfile prof{n, T_c, nondeg, f, std::vector<ProfileSample>(eps_values.size())};
  parallel_for(
      eps_values.size(),
      [&](std::size_t i) {
        ProfileSample& s = prof.samples[i];
        s.eps = eps_values[i];
        s.F_closed = F0_closed(s.eps, n, T_c, nondeg, f);
        const QuadValue q = F0_quadrature(s.eps, n, T_c, nondeg, f);
        s.F_quadrature = q.value;
        s.converged = q.converged;
        s.rel_diff = compare(s.F_closed, s.F_quadrature).rel_err;
      },
      threads);
  return prof;
}

double hessian_JJ_closed(double eps, int n, double T_c, const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  if (f.degree() == 0) return 0.0;
  return 0.5 * specfun::beta(0.5 * (n + 3), 0.5 * (n - 3)) *
         reduction::J_of_s(eps * eps, n, T_c, f);
}

double hessian_KK_closed(double eps, int n, double T_c, const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  if (f.degree() == 0) return 0.0;
  const ReductionPolynomial df = f.derivative();
  const ReductionPolynomial gamma = df * df;
  const reduction::CqSet c = reduction::cq_set(n, T_c, gamma.degree() + 1);
  double sum = 0.0;
  for (int q = 0; q <= gamma.degree(); ++q) {
    const double log_term = c.log_c0 + specfun::log_beta(0.5 * (n + 5 + 2 * q), 0.5 * (n - 7 - 2 * q)) +
                            (2.0 * q + 6.0) * std::log(eps);
    sum += gamma.coeff(q) * c.ratio[q + 1] * std::exp(log_term);
  }
  return 0.5 * sum;
}

QuadValue hessian_JJ_quadrature(double eps, int n, double T_c, const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  return double_integral(eps, n, T_c, -double(n), n + 4.0, beta_poly(f));
}

QuadValue hessian_KK_quadrature(double eps, int n, double T_c, const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  const ReductionPolynomial df = f.derivative();
  return double_integral(eps, n, T_c, 1.0 - n, n + 4.0, df * df);
}

HessianReport hessian_xi(double eps, int n, double T_c, const WeylLike& W,
                         const ReductionPolynomial& f, bool with_quadrature) {
  if (n <= 9) throw Error(ErrorCode::domain, "Hessian needs n > 9");
  if (W.dim() != n - 1) throw Error(ErrorCode::config, "Weyl tensor must live on R^{n-1}");
  HessianReport rep;
  rep.eps = eps;
  const double S = curvature::nondegeneracy_scalar(W);
  const double area = specfun::sphere_area(n - 1);
  const double n2 = (n - 2.0) * (n - 2.0);
  rep.JJ_closed = hessian_JJ_closed(eps, n, T_c, f);
  rep.KK_closed = hessian_KK_closed(eps, n, T_c, f);
  if (with_quadrature) {
    const QuadValue jj = hessian_JJ_quadrature(eps, n, T_c, f);
    const QuadValue kk = hessian_KK_quadrature(eps, n, T_c, f);
    rep.JJ_quadrature = jj.value;
    rep.KK_quadrature = kk.value;
    rep.JJ_rel_diff = compare(rep.JJ_closed, jj.value).rel_err;
    rep.KK_rel_diff = compare(rep.KK_closed, kk.value).rel_err;
    rep.converged = jj.converged && kk.converged;
  }
  rep.term_A_scalar = -2.0 * n2 * area / ((n - 1.0) * (n + 1.0) * (n + 3.0)) * rep.JJ_closed;
  rep.term_B_scalar = -n2 * area / (2.0 * (n - 1.0) * (n + 1.0) * (n + 3.0)) * S * rep.JJ_closed;
  rep.term_C_scalar = n2 * area / (4.0 * (n - 1.0) * (n - 1.0) * (n + 1.0)) * S * rep.KK_closed;
  rep.matrix = rep.term_A_scalar * curvature::contraction_T(W);
  rep.matrix.diagonal().array() += rep.term_B_scalar + rep.term_C_scalar;
  rep.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rep.matrix, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  return rep;
}

double golden_section_minimize(const std::function<double(double)>& g, double lo, double hi,
                               double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  while (b - a > tol) {
    if (g1 <= g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - invphi * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + invphi * (b - a);
      g2 = g(x2);
    }
  }
  return 0.5 * (a + b);
}

LocalMinReport local_min_check(int n, double T_c, const WeylLike& W,
                               const ReductionPolynomial& f) {
  check_energy_domain(n, f);
  LocalMinReport rep;
  const double K = energy_constant(n, curvature::nondegeneracy_scalar(W));
  const reduction::CqSet c = reduction::cq_set(n, T_c, 2 * f.degree());
  const ReductionPolynomial I = reduction::I_polynomial(c, f);  // I / c_0
  const ReductionPolynomial dI = I.derivative();
  const ReductionPolynomial d2I = dI.derivative();
  const double scale = std::exp(c.log_c0);
  const double i1 = I(1.0), ip1 = dI(1.0), ipp1 = d2I(1.0);
  rep.F0_at_1 = -K * scale * i1;
  rep.dF0_deps = -2.0 * K * scale * ip1;
  rep.d2F0_deps2 = -K * scale * (2.0 * ip1 + 4.0 * ipp1);
  rep.first_order_ok = std::fabs(ip1) <= 1e-9 * std::fabs(i1);
  rep.second_order_ok = 2.0 * ip1 + 4.0 * ipp1 < 0.0;

  rep.hessian_min_eigenvalue = hessian_xi(1.0, n, T_c, W, f, false).min_eigenvalue;
  rep.hessian_ok = rep.hessian_min_eigenvalue > 0.0;

  // F0 up to the positive factor K c_0 I(1).
  auto g = [&](double eps) { return -I(eps * eps) / i1; };
  rep.minimizer = golden_section_minimize(g, 0.5, 2.0, 1e-10);
  rep.minimizer_ok = std::fabs(rep.minimizer - 1.0) <= 1e-6;

  // Next critical point of I beyond s = 1: smallest root of I' / s above 1 + 1e-6.
  double next = 4.0;
  const ReductionPolynomial reduced = [&] {
    std::vector<double> cf(dI.coeffs().begin() + std::min<std::size_t>(1, dI.coeffs().size() - 1),
                           dI.coeffs().end());
    return ReductionPolynomial(cf);
  }();
  if (reduced.degree() == 2) {
    const double qa = reduced.coeff(2), qb = reduced.coeff(1), qc = reduced.coeff(0);
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      for (double root : {(-qb - std::sqrt(disc)) / (2.0 * qa), (-qb + std::sqrt(disc)) / (2.0 * qa)})
        if (root > 1.0 + 1e-6) next = std::min(next, root);
    }
  }
  rep.local_bracket_hi = std::min(2.0, std::sqrt(next));
  rep.local_minimizer = golden_section_minimize(g, 0.5, rep.local_bracket_hi, 1e-10);
  rep.local_minimizer_ok = std::fabs(rep.local_minimizer - 1.0) <= 1e-6;
  return rep;
}

}  // namespace blowup::energy
