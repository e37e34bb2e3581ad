#include "blowup/polynomial.hpp"

#include <algorithm>

namespace blowup {

ReductionPolynomial::ReductionPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double ReductionPolynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

ReductionPolynomial ReductionPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return ReductionPolynomial(std::move(d));
}

ReductionPolynomial operator+(const ReductionPolynomial& a, const ReductionPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return ReductionPolynomial(std::move(c));
}

ReductionPolynomial operator*(const ReductionPolynomial& a, const ReductionPolynomial& b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ReductionPolynomial(std::move(c));
}

ReductionPolynomial operator*(double k, const ReductionPolynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (double& x : c) x *= k;
  return ReductionPolynomial(std::move(c));
}

ReductionPolynomial ReductionPolynomial::shifted(int k) const {
  if (is_zero() || k <= 0) return *this;
  std::vector<double> c(static_cast<std::size_t>(k), 0.0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return ReductionPolynomial(std::move(c));
}

}  // namespace blowup
