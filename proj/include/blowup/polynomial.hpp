#pragma once

#include <initializer_list>
#include <vector>

namespace blowup {

/// f(s) = sum_i a_i s^i with trailing zeros trimmed. The zero polynomial is
/// stored as {0} and reports degree 0.
class ReductionPolynomial {
 public:
  ReductionPolynomial() : coeffs_{0.0} {}
  explicit ReductionPolynomial(std::vector<double> coeffs);
  ReductionPolynomial(std::initializer_list<double> coeffs)
      : ReductionPolynomial(std::vector<double>(coeffs)) {}

  static ReductionPolynomial constant(double c) { return ReductionPolynomial({c}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : 0.0;
  }

  double operator()(double s) const;
  ReductionPolynomial derivative() const;

  friend ReductionPolynomial operator+(const ReductionPolynomial& a, const ReductionPolynomial& b);
  friend ReductionPolynomial operator*(const ReductionPolynomial& a, const ReductionPolynomial& b);
  friend ReductionPolynomial operator*(double k, const ReductionPolynomial& a);
  /// Multiplication by s^k.
  ReductionPolynomial shifted(int k) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace blowup
