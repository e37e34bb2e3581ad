#include "blowup/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blowup/error.hpp"
#include "blowup/parallel.hpp"
#include "blowup/specfun.hpp"

namespace blowup::reduction {

namespace {

std::vector<double> padded(const ReductionPolynomial& p, std::size_t size) {
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) out[i] = p.coeff(static_cast<int>(i));
  return out;
}

void require_order(const CqSet& c, int qmax) {
  if (c.qmax() < qmax) throw Error(ErrorCode::domain, "CqSet holds too few moments");
}

constexpr double kZeroTolerance = 1e-10;

}  // namespace

std::vector<double> alpha_coeffs(const ReductionPolynomial& f, int n) {
  const ReductionPolynomial df = f.derivative();
  const ReductionPolynomial a =
      static_cast<double>(n + 1) * (f * f) + 4.0 * (f * df).shifted(1) + 2.0 * (df * df).shifted(2);
  return padded(a, 2 * f.degree() + 1);
}

std::vector<double> beta_coeffs(const ReductionPolynomial& f) {
  if (f.degree() == 0) return {};
  const ReductionPolynomial df = f.derivative();
  const ReductionPolynomial b = 2.0 * (f * df) + (df * df).shifted(1);
  return padded(b, 2 * f.degree());
}

double CqSet::c(int q) const { return std::exp(log_c0) * ratio.at(q); }

CqSet cq_set(int n, double T_c, int qmax) {
  CqSet out;
  out.n = n;
  out.T_c = T_c;
  out.log_c0 = specfun::c_q(n, T_c, 0).log_value;
  out.ratio.push_back(1.0);
  for (int q = 1; q <= qmax; ++q)
    out.ratio.push_back(std::exp(specfun::c_q(n, T_c, q).log_value - out.log_c0));
  return out;
}

double I_product(int n, int q) {
  double p = 1.0;
  for (int j = 0; j <= q; ++j) p *= static_cast<double>(n - 1 + 2 * j) / (n - 5 - 2 * j);
  return p;
}

double J_product(int n, int q) {
  double p = 1.0;
  for (int j = 0; j <= q; ++j) p *= static_cast<double>(n + 3 + 2 * j) / (n - 5 - 2 * j);
  return p;
}

ReductionPolynomial I_polynomial(const CqSet& c, const ReductionPolynomial& f) {
  const std::vector<double> alpha = alpha_coeffs(f, c.n);
  require_order(c, static_cast<int>(alpha.size()) - 1);
  std::vector<double> coeffs(alpha.size() + 2, 0.0);
  for (std::size_t q = 0; q < alpha.size(); ++q)
    coeffs[q + 2] = c.ratio[q] * alpha[q] * I_product(c.n, static_cast<int>(q));
  return ReductionPolynomial(coeffs);
}

ReductionPolynomial J_polynomial(const CqSet& c, const ReductionPolynomial& f) {
  const std::vector<double> beta = beta_coeffs(f);
  if (beta.empty()) return {};
  require_order(c, static_cast<int>(beta.size()) - 1);
  std::vector<double> coeffs(beta.size() + 2, 0.0);
  for (std::size_t q = 0; q < beta.size(); ++q)
    coeffs[q + 2] = c.ratio[q] * beta[q] * J_product(c.n, static_cast<int>(q));
  return ReductionPolynomial(coeffs);
}

namespace {

double evaluate(const ReductionPolynomial& scaled, double log_c0, double s, int derivative) {
  ReductionPolynomial p = scaled;
  for (int k = 0; k < derivative; ++k) p = p.derivative();
  return std::exp(log_c0) * p(s);
}

}  // namespace

double I_of_s(double s, int n, double T_c, const ReductionPolynomial& f, int derivative) {
  const CqSet c = cq_set(n, T_c, 2 * f.degree());
  return evaluate(I_polynomial(c, f), c.log_c0, s, derivative);
}

double J_of_s(double s, int n, double T_c, const ReductionPolynomial& f, int derivative) {
  const int qmax = std::max(0, 2 * f.degree() - 1);
  const CqSet c = cq_set(n, T_c, qmax);
  return evaluate(J_polynomial(c, f), c.log_c0, s, derivative);
}

double discriminant_scaled(const CqSet& c) {
  require_order(c, 2);
  const double n = c.n;
  if (c.n <= 9) throw Error(ErrorCode::domain, "discriminant needs n > 9");
  const double k = (n + 3.0) / (n - 7.0);
  return k * k *
         (9.0 * c.ratio[1] * c.ratio[1] -
          8.0 * (n + 7.0) * (n - 7.0) / ((n + 3.0) * (n - 9.0)) * c.ratio[2]);
}

double discriminant(int n, double T_c) {
  const CqSet c = cq_set(n, T_c, 2);
  return std::exp(2.0 * c.log_c0) * discriminant_scaled(c);
}

double p_n_scaled(const CqSet& c, double a) {
  require_order(c, 2);
  const double n = c.n;
  return a * a - 3.0 * (n + 3.0) / (n - 7.0) * c.ratio[1] * a +
         2.0 * (n + 3.0) * (n + 7.0) / ((n - 7.0) * (n - 9.0)) * c.ratio[2];
}

std::optional<double> a0_star(const CqSet& c) {
  require_order(c, 2);
  const double n = c.n;
  if (c.n <= 9) throw Error(ErrorCode::domain, "a0 needs n > 9");
  const double c1 = c.ratio[1], c2 = c.ratio[2];
  const double radicand =
      9.0 - 8.0 * (n + 7.0) * (n - 7.0) / ((n + 3.0) * (n - 9.0)) * c2 / (c1 * c1);
  if (radicand < 0.0) return std::nullopt;
  return (n + 3.0) * c1 / (2.0 * (n - 7.0)) * (3.0 + std::sqrt(radicand));
}

std::optional<double> a0_star(int n, double T_c) { return a0_star(cq_set(n, T_c, 2)); }

ReductionPolynomial construct_f(int n, double T_c) {
  const std::optional<double> a0 = a0_star(n, T_c);
  if (!a0)
    throw Error(ErrorCode::no_real_root, "p_n has no real root at n = " + std::to_string(n));
  return ReductionPolynomial({*a0, -1.0});
}

BigInt q_poly(long n) {
  const BigInt m = n;
  return 9 * (m + 3) * (m - 9) * (m - 10) - 8 * (m - 8) * (m - 8) * (m + 7);
}

BigInt q_poly_expanded(long n) {
  const BigInt m = n;
  return m * m * m - 72 * m * m + 681 * m - 1154;
}

BigInt q_poly_derivative(long n) {
  const BigInt m = n;
  return 3 * m * m - 144 * m + 681;
}

Rational p_cal_alpha() { return Rational(37989, 33800); }

Rational p_cal(long n) {
  const Rational m = n;
  return p_cal_alpha() * (m + 3) * (m - 9) * (m - 10) - (m + 7) * (m - 8) * (m - 8);
}

Rational p_cal_derivative(long n) {
  const Rational m = n;
  return p_cal_alpha() * (3 * m * m - 32 * m + 33) - (3 * m * m - 18 * m - 48);
}

Rational p_cal_second_derivative(long n) {
  const Rational m = n;
  return 6 * (p_cal_alpha() - 1) * m + 18 - 32 * p_cal_alpha();
}

BigInt third_bound(long n) {
  const BigInt m = n;
  return 9 * (m + 3) * (m - 10) * (m - 9) - 4 * (m + 7) * (m - 8) * (m - 8);
}

BoundCertificate bound_certificate(long n) {
  BoundCertificate c;
  c.n = n;
  c.q_positive = q_poly(n) > 0;
  c.p_cal_positive = p_cal(n) > 0;
  c.third_positive = third_bound(n) > 0;
  c.certified = c.q_positive && c.p_cal_positive && c.third_positive;
  return c;
}

DimensionRow dimension_row(int n, double T_c) {
  DimensionRow row;
  row.n = n;
  row.T_c = T_c;
  row.certificate = bound_certificate(n);
  const CqSet c = cq_set(n, T_c, 2);
  const double scale = std::exp(c.log_c0);
  row.log_c0 = c.log_c0;
  row.c0 = c.c(0);
  row.c1 = c.c(1);
  row.c2 = c.c(2);
  row.disc = std::exp(2.0 * c.log_c0) * discriminant_scaled(c);
  row.a0 = a0_star(c);
  row.a0_real = row.a0.has_value();
  if (!row.a0_real) return row;
  // Verdicts are taken on I / c_0, which has the same signs and ratios.
  const ReductionPolynomial f({*row.a0, -1.0});
  const ReductionPolynomial I = I_polynomial(c, f);
  const ReductionPolynomial dI = I.derivative();
  const double i1 = I(1.0), ip1 = dI(1.0), ipp1 = dI.derivative()(1.0);
  const double j1 = J_polynomial(c, f)(1.0);
  row.I1 = scale * i1;
  row.Ip1 = scale * ip1;
  row.Ipp1 = scale * ipp1;
  row.J1 = scale * j1;
  row.I1_pos = i1 > 0.0;
  row.Iprime1_zero = std::fabs(ip1) <= kZeroTolerance * std::fabs(i1);
  row.Ipp1_neg = ipp1 < 0.0;
  row.J1_neg = j1 < 0.0;
  return row;
}

ScanResult certificate_scan(int n_lo, int n_hi, std::span<const double> T_c_list, int threads) {
  if (n_lo < 25 || n_hi > 500 || n_lo > n_hi)
    throw Error(ErrorCode::config, "scan range must satisfy 25 <= n_lo <= n_hi <= 500");
  std::vector<double> tcs(T_c_list.begin(), T_c_list.end());
  for (double t : tcs)
    if (!(t < 0.0)) throw Error(ErrorCode::config, "every T_c must be negative");
  std::sort(tcs.begin(), tcs.end());
  tcs.erase(std::unique(tcs.begin(), tcs.end()), tcs.end());

  ScanResult out;
  for (long n = n_lo; n <= n_hi; ++n)
    if (bound_certificate(n).certified) {
      out.minimal_certified_n = n;
      break;
    }
  const std::size_t per_n = tcs.size();
  out.rows.resize(static_cast<std::size_t>(n_hi - n_lo + 1) * per_n);
  parallel_for(
      out.rows.size(),
      [&](std::size_t i) {
        out.rows[i] = dimension_row(n_lo + static_cast<int>(i / per_n), tcs[i % per_n]);
      },
      threads);
  return out;
}

RatioBounds ratio_bounds(int n, double T_c) {
  RatioBounds b;
  b.n = n;
  b.T_c = T_c;
  const CqSet c = cq_set(n, T_c, 3);
  const double A = 1.0 + T_c * T_c;
  for (int q = 0; q < 3; ++q) {
    const double k = n - 2.0 * q;
    b.ratio[q] = c.ratio[q + 1] / c.ratio[q];
    b.lower[q] = A * (k - 7.0) / (k - 8.0);
    b.upper[q] = A * (k - 6.0) / (k - 8.0);
  }
  b.mixed = c.ratio[1] * c.ratio[1] / c.ratio[2];
  b.mixed_lower = (n - 10.0) * (n - 7.0) / ((n - 8.0) * (n - 8.0));
  b.mixed_upper = (n - 6.0) * (n - 10.0) / ((n - 8.0) * (n - 9.0));
  return b;
}

bool RatioBounds::holds() const {
  bool ok = mixed >= mixed_lower - kZeroTolerance * mixed &&
            mixed <= mixed_upper + kZeroTolerance * mixed;
  for (int q = 0; q < 3; ++q)
    ok = ok && ratio[q] >= lower[q] - kZeroTolerance * ratio[q] &&
         ratio[q] <= upper[q] + kZeroTolerance * ratio[q];
  return ok;
}

}  // namespace blowup::reduction
