#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "blowup/curvature.hpp"
#include "blowup/polynomial.hpp"

namespace blowup::sphere {

/// Sparse polynomial in up to 16 variables. Exponents are packed four bits
/// per variable into the key, so each exponent must stay below 16.
class Poly {
 public:
  explicit Poly(int vars) : vars_(vars) {}

  static Poly constant(int vars, double c);
  static Poly variable(int vars, int i);

  int vars() const { return vars_; }
  const std::unordered_map<std::uint64_t, double>& terms() const { return terms_; }

  void add_term(std::uint64_t key, double c);
  Poly derivative(int i) const;

  Poly& operator+=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(double k, Poly a);

  static int exponent(std::uint64_t key, int i) { return static_cast<int>((key >> (4 * i)) & 0xF); }
  static std::uint64_t unit(int i) { return std::uint64_t{1} << (4 * i); }

  /// int over the sphere of radius r in R^vars of this polynomial times x_p x_q
  /// (p or q negative drops that factor).
  double sphere_integral(double r, int p = -1, int q = -1) const;

 private:
  int vars_;
  std::unordered_map<std::uint64_t, double> terms_;
};

/// Expanded integrands of the sphere identities for one (W, f) on R^m,
/// m = W.dim(): sum (d_l H_ik)^2, sum H_ik^2 and sum (d_l Hbar_ik)^2 with
/// Hbar = f(|x|^2) H.
class MomentOracle {
 public:
  MomentOracle(const curvature::WeylLike& W, const ReductionPolynomial& f);

  const Poly& grad_h_squared() const { return dh2_; }
  const Poly& h_squared() const { return h2_; }
  const Poly& grad_hbar_squared() const { return dhbar2_; }

 private:
  Poly dh2_;
  Poly h2_;
  Poly dhbar2_;
};

}  // namespace blowup::sphere
