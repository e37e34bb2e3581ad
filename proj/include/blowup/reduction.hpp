#pragma once

#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blowup/polynomial.hpp"

namespace blowup::reduction {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Coefficients of (n+1) f^2 + 4 s f f' + 2 s^2 f'^2 in powers of s.
std::vector<double> alpha_coeffs(const ReductionPolynomial& f, int n);
/// Coefficients of 2 f f' + s f'^2; empty when f is constant.
std::vector<double> beta_coeffs(const ReductionPolynomial& f);

/// c_0..c_qmax for one (n, T_c). For large n and |T_c| the moments leave
/// the double range, so they are kept as log c_0 plus the ratios c_q / c_0.
struct CqSet {
  int n = 0;
  double T_c = 0.0;
  double log_c0 = 0.0;
  std::vector<double> ratio;  // ratio[q] = c_q / c_0

  double c(int q) const;
  int qmax() const { return static_cast<int>(ratio.size()) - 1; }
};
CqSet cq_set(int n, double T_c, int qmax);

/// I(s) / c_0 as a polynomial in s (all terms s^{q+2}, q <= 2d).
ReductionPolynomial I_polynomial(const CqSet& c, const ReductionPolynomial& f);
/// J(s) / c_0 as a polynomial in s (terms s^{q+2}, q <= 2d - 1).
ReductionPolynomial J_polynomial(const CqSet& c, const ReductionPolynomial& f);

/// I^{(derivative)}(s) in actual units. Throws Error{divergent_moment} when
/// n - 5 - 4d <= 1.
double I_of_s(double s, int n, double T_c, const ReductionPolynomial& f, int derivative = 0);
double J_of_s(double s, int n, double T_c, const ReductionPolynomial& f, int derivative = 0);

/// prod_{j=0}^q (n-1+2j)/(n-5-2j) and prod_{j=0}^q (n+3+2j)/(n-5-2j).
double I_product(int n, int q);
double J_product(int n, int q);

/// Larger root of p_n(a) = c0 a^2 - 3(n+3)/(n-7) c1 a + 2(n+3)(n+7)/((n-7)(n-9)) c2.
/// Empty when the discriminant is negative.
std::optional<double> a0_star(int n, double T_c);
std::optional<double> a0_star(const CqSet& c);

/// d(p_n) / c_0^2.
double discriminant_scaled(const CqSet& c);
/// d(p_n) in actual units (may underflow for large n).
double discriminant(int n, double T_c);
/// p_n(a) / c_0.
double p_n_scaled(const CqSet& c, double a);

/// f(s) = a0_star - s. Throws Error{no_real_root} when a0_star is empty.
ReductionPolynomial construct_f(int n, double T_c);

/// q(n) = 9(n+3)(n-9)(n-10) - 8(n-8)^2(n+7), factored and expanded forms.
BigInt q_poly(long n);
BigInt q_poly_expanded(long n);
BigInt q_poly_derivative(long n);  // 3n^2 - 144n + 681

/// P(n) = alpha (n+3)(n-9)(n-10) - (n+7)(n-8)^2, alpha = 37989/33800.
Rational p_cal_alpha();
Rational p_cal(long n);
Rational p_cal_derivative(long n);
Rational p_cal_second_derivative(long n);

/// 9(n+3)(n-10)(n-9) - 4(n+7)(n-8)^2.
BigInt third_bound(long n);

struct BoundCertificate {
  long n = 0;
  bool q_positive = false;
  bool p_cal_positive = false;
  bool third_positive = false;
  bool certified = false;  // conjunction of the three
};
BoundCertificate bound_certificate(long n);

struct DimensionRow {
  int n = 0;
  double T_c = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double log_c0 = 0.0;
  std::optional<double> a0;
  double disc = 0.0;
  double I1 = 0.0, Ip1 = 0.0, Ipp1 = 0.0, J1 = 0.0;
  bool a0_real = false;
  bool I1_pos = false;
  bool Iprime1_zero = false;  // |I'(1)| <= 1e-10 |I(1)|
  bool Ipp1_neg = false;
  bool J1_neg = false;
  BoundCertificate certificate;

  bool direct_pass() const { return a0_real && I1_pos && Iprime1_zero && Ipp1_neg && J1_neg; }
};

/// One row; a failed construction yields a row with a0_real == false.
DimensionRow dimension_row(int n, double T_c);

struct ScanResult {
  std::vector<DimensionRow> rows;  // sorted by (n, T_c)
  std::optional<long> minimal_certified_n;
};

/// Rows for every n in [n_lo, n_hi] and every T_c. Throws Error{config}
/// unless 25 <= n_lo <= n_hi <= 500 and every T_c < 0.
ScanResult certificate_scan(int n_lo, int n_hi, std::span<const double> T_c_list,
                            int threads = 0);

/// Bounds on c_{q+1}/c_q and c_1^2/(c_0 c_2) at one (n, T_c).
struct RatioBounds {
  int n = 0;
  double T_c = 0.0;
  double ratio[3] = {0, 0, 0};
  double lower[3] = {0, 0, 0};
  double upper[3] = {0, 0, 0};
  double mixed = 0.0;  // c_1^2 / (c_0 c_2)
  double mixed_lower = 0.0, mixed_upper = 0.0;
  /// All bounds hold with 1e-10 relative slack.
  bool holds() const;
};
RatioBounds ratio_bounds(int n, double T_c);

}  // namespace blowup::reduction
