#include "blowup/sphere_poly.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/error.hpp"
#include "blowup/specfun.hpp"

namespace blowup::sphere {

namespace {

std::uint64_t add_keys(std::uint64_t a, std::uint64_t b, int vars) {
  for (int i = 0; i < vars; ++i)
    if (Poly::exponent(a, i) + Poly::exponent(b, i) > 15)
      throw Error(ErrorCode::domain, "monomial exponent exceeds packing limit");
  return a + b;
}

}  // namespace

Poly Poly::constant(int vars, double c) {
  Poly p(vars);
  p.add_term(0, c);
  return p;
}

Poly Poly::variable(int vars, int i) {
  Poly p(vars);
  p.add_term(unit(i), 1.0);
  return p;
}

void Poly::add_term(std::uint64_t key, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Poly Poly::derivative(int i) const {
  Poly out(vars_);
  for (const auto& [key, c] : terms_) {
    const int e = exponent(key, i);
    if (e > 0) out.add_term(key - unit(i), c * e);
  }
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a.vars_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(add_keys(ka, kb, a.vars_), ca * cb);
  return out;
}

Poly operator*(double k, Poly a) {
  for (auto& [key, c] : a.terms_) c *= k;
  return a;
}

double Poly::sphere_integral(double r, int p, int q) const {
  // Sum in a fixed key order so the result does not depend on hash layout.
  std::vector<std::pair<std::uint64_t, double>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> e(vars_);
  double total = 0.0;
  for (const auto& [key, c] : sorted) {
    int degree = 0;
    for (int i = 0; i < vars_; ++i) {
      e[i] = exponent(key, i) + (i == p ? 1 : 0) + (i == q ? 1 : 0);
      degree += e[i];
    }
    const double m = specfun::monomial_sphere_moment(vars_, e);
    if (m != 0.0) total += c * m * std::pow(r, vars_ - 1 + degree);
  }
  return total;
}

MomentOracle::MomentOracle(const curvature::WeylLike& W, const ReductionPolynomial& f)
    : dh2_(W.dim()), h2_(W.dim()), dhbar2_(W.dim()) {
  const int m = W.dim();
  if (m > 16) throw Error(ErrorCode::domain, "moment oracle supports at most 16 variables");
  // f(|x|^2) expanded.
  Poly norm2(m);
  for (int i = 0; i < m; ++i) norm2.add_term(2 * Poly::unit(i), 1.0);
  Poly fx(m);
  Poly power = Poly::constant(m, 1.0);
  for (int j = 0; j <= f.degree(); ++j) {
    fx += f.coeff(j) * power;
    power = power * norm2;
  }
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      Poly H(m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          const double w = W(i, a, k, b);
          if (w != 0.0) H.add_term(Poly::unit(a) + Poly::unit(b), w);
        }
      if (H.terms().empty()) continue;
      h2_ += H * H;
      const Poly Hbar = fx * H;
      for (int l = 0; l < m; ++l) {
        const Poly dH = H.derivative(l);
        dh2_ += dH * dH;
        const Poly dHbar = Hbar.derivative(l);
        dhbar2_ += dHbar * dHbar;
      }
    }
}

}  // namespace blowup::sphere
