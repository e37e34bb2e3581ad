#include "blowup/nonuniq.hpp"

#include <cmath>

#include "blowup/error.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"

namespace blowup::nonuniq {

namespace {

void check_bubble(double R_g, double h_g, int n) {
  if (n < 5) throw Error(ErrorCode::domain, "bubble energy needs n >= 5");
  if (!(R_g > 0.0)) throw Error(ErrorCode::domain, "bubble energy needs R_g > 0");
  if (!(h_g >= 0.0)) throw Error(ErrorCode::domain, "bubble energy needs h_g >= 0");
}

// log of (n(n-1)/R_g)^{power} 2^{exp2}
double log_prefactor(double R_g, int n, double power, double exp2) {
  return power * std::log(n * (n - 1.0) / R_g) + exp2 * std::log(2.0);
}

double margin(const WarpedProductSpec& spec, double k) {
  const WarpedInvariants w = warped_invariants(spec, k);
  return energy_of_one(spec, k) - bubble_total_energy(w.R_g, w.h_g, spec.n()) - 1.0;
}

}  // namespace

void WarpedProductSpec::validate() const {
  if (n1 < 3 || n2 < 2 || n() < 5) throw Error(ErrorCode::config, "need n1 >= 3, n2 >= 2");
  if (!(R_g1 > 0 && h_g1 > 0 && R_g2 > 0 && V1 > 0 && Vhat1 > 0 && V2 > 0))
    throw Error(ErrorCode::config, "curvatures and volumes must be positive");
}

WarpedInvariants warped_invariants(const WarpedProductSpec& spec, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::domain, "k must be positive");
  WarpedInvariants w;
  w.R_g = spec.R_g1 / k + spec.R_g2;
  w.h_g = spec.h_g1 / std::sqrt(k);
  w.T_c = -0.5 * w.h_g;
  return w;
}

double energy_of_one(const WarpedProductSpec& spec, double k) {
  spec.validate();
  if (!(k > 0.0)) throw Error(ErrorCode::domain, "k must be positive");
  const int n = spec.n();
  return 2.0 / n * (spec.R_g1 / k + spec.R_g2) * std::pow(k, 0.5 * spec.n1) * spec.V1 * spec.V2 +
         2.0 / std::sqrt(k) * spec.h_g1 * std::pow(k, 0.5 * (spec.n1 - 1)) * spec.Vhat1 * spec.V2;
}

double bubble_total_energy(double R_g, double h_g, int n) {
  check_bubble(R_g, h_g, n);
  const double T_c = -0.5 * h_g;
  const double log_area = specfun::log_sphere_area(n - 1);
  // Interior: int over x' by a radial Beta moment, then the half-line moment in x_n.
  const double alpha = 0.5 * (n + 1);
  const double log_moment = T_c < 0.0 ? specfun::half_line_moment(alpha, -T_c).log_value
                                      : std::log(0.5) + specfun::log_beta(0.5, alpha - 0.5);
  const double log_interior = log_prefactor(R_g, n, 0.5 * n, n) + log_area + std::log(0.5) +
                              specfun::log_beta(0.5 * (n - 1), 0.5 * (n + 1)) + log_moment;
  double total = 2.0 / n * R_g * std::exp(log_interior);
  if (h_g > 0.0) {
    const double log_boundary = log_prefactor(R_g, n, 0.5 * (n - 1), n - 1) + log_area +
                                std::log(0.5) - 0.5 * (n - 1) * std::log1p(T_c * T_c) +
                                specfun::log_beta(0.5 * (n - 1), 0.5 * (n - 1));
    total += 2.0 * h_g * std::exp(log_boundary);
  }
  return total;
}

QuadEnergy bubble_total_energy_quadrature(double R_g, double h_g, int n) {
  check_bubble(R_g, h_g, n);
  const double T_c = -0.5 * h_g;
  const double area = specfun::sphere_area(n - 1);
  QuadEnergy out;
  specfun::QuadratureSpec inner{1e-300, 1e-11, 2000, specfun::Transform::semi_infinite_rational, 1.0};
  specfun::QuadratureSpec outer{1e-300, 1e-10, 2000, specfun::Transform::semi_infinite_rational, 1.0};
  // W^{2n/(n-2)} and W^{2(n-1)/(n-2)} in terms of (rho, x_n).
  const double log_in = log_prefactor(R_g, n, 0.5 * n, n);
  const double log_bd = log_prefactor(R_g, n, 0.5 * (n - 1), n - 1);
  auto slice = [&](double xn) {
    const double A = 1.0 + (xn - T_c) * (xn - T_c);
    inner.scale = std::sqrt(A);
    auto g = [&](double rho) {
      if (rho == 0.0) return 0.0;
      return std::exp(log_in + (n - 2) * std::log(rho) - n * std::log(A + rho * rho));
    };
    const specfun::QuadResult r = specfun::quad_1d(g, 0.0, specfun::kInfinity, inner);
    out.converged = out.converged && r.converged;
    return r.value;
  };
  const specfun::QuadResult vol = specfun::quad_1d(slice, 0.0, specfun::kInfinity, outer);
  out.converged = out.converged && vol.converged;
  out.value = 2.0 / n * R_g * area * vol.value;
  if (h_g > 0.0) {
    auto g = [&](double rho) {
      if (rho == 0.0) return 0.0;
      return std::exp(log_bd + (n - 2) * std::log(rho) -
                      (n - 1) * std::log(1.0 + T_c * T_c + rho * rho));
    };
    specfun::QuadratureSpec spec = inner;
    spec.scale = 1.0;
    const specfun::QuadResult r = specfun::quad_1d(g, 0.0, specfun::kInfinity, spec);
    out.converged = out.converged && r.converged;
    out.value += 2.0 * h_g * area * r.value;
  }
  return out;
}

double S_c_infinity(const WarpedProductSpec& spec) {
  spec.validate();
  const int n = spec.n();
  return spec.R_g2 * std::exp(0.5 * n * std::log(n * (n - 1.0) / spec.R_g2) +
                              specfun::log_sphere_area(n + 1)) / n;
}

VolumeCheck stereographic_volume_check(int n) {
  if (n < 2) throw Error(ErrorCode::domain, "volume check needs n >= 2");
  VolumeCheck out;
  out.n = n;
  auto g = [n](double r) {
    if (r == 0.0) return 0.0;
    return std::exp((n - 1) * std::log(r) + n * (std::log(2.0) - std::log1p(r * r)));
  };
  specfun::QuadratureSpec spec{1e-300, 1e-12, 2000, specfun::Transform::semi_infinite_rational, 1.0};
  const specfun::QuadResult r = specfun::quad_1d(g, 0.0, specfun::kInfinity, spec);
  out.converged = r.converged;
  // Half of the full-space radial integral.
  out.integral = 0.5 * specfun::sphere_area(n) * r.value;
  const double omega = specfun::sphere_area(n + 1);
  const double alt = specfun::sphere_area(n);
  out.rel_err = std::fabs(out.integral - 0.5 * omega) / (0.5 * omega);
  out.rel_err_alt = std::fabs(out.integral - 0.5 * alt) / (0.5 * alt);
  return out;
}

ThresholdReport threshold_k(const WarpedProductSpec& spec) {
  spec.validate();
  ThresholdReport rep;
  rep.spec = spec;
  rep.Sc_infinity = S_c_infinity(spec);
  double prev = 0.0;
  double k = 1.0;
  bool found = false;
  for (int j = 0; k <= 1e12; ++j, k = std::pow(1.1, j)) {
    if (margin(spec, k) > 0.0) {
      found = true;
      break;
    }
    prev = k;
  }
  if (!found) return rep;
  if (prev > 0.0) {
    // margin(prev) <= 0 < margin(k)
    double lo = prev, hi = k;
    while ((hi - lo) > 1e-3 * hi) {
      const double mid = 0.5 * (lo + hi);
      (margin(spec, mid) > 0.0 ? hi : lo) = mid;
    }
    k = hi;
  }
  rep.threshold_k = k;
  rep.I1_at_threshold = energy_of_one(spec, k);
  const WarpedInvariants w = warped_invariants(spec, k);
  rep.Sck_at_threshold = bubble_total_energy(w.R_g, w.h_g, spec.n());
  rep.exceeds_Sc_infinity_plus_1 = rep.I1_at_threshold > rep.Sc_infinity + 1.0;
  return rep;
}

}  // namespace blowup::nonuniq
