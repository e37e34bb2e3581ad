#pragma once

#include <optional>

namespace blowup::nonuniq {

/// Warped product M1 x_k M2 with g = k g1 + g2 (dimensions n1, n2).
struct WarpedProductSpec {
  int n1 = 3;
  int n2 = 2;
  double R_g1 = 6.0;
  double h_g1 = 2.0;
  double R_g2 = 2.0;
  double V1 = 1.0;
  double Vhat1 = 1.0;
  double V2 = 1.0;

  int n() const { return n1 + n2; }
  /// Throws Error{config} on n1 < 3, n2 < 2, n < 5 or a non-positive datum.
  void validate() const;
};

struct WarpedInvariants {
  double R_g = 0.0;
  double h_g = 0.0;
  double T_c = 0.0;  // -h_g / 2
};
WarpedInvariants warped_invariants(const WarpedProductSpec& spec, double k);

/// Energy of the constant solution u = 1.
double energy_of_one(const WarpedProductSpec& spec, double k);

/// (2/n) R_g int W^{2n/(n-2)} + 2 h_g int_boundary W^{2(n-1)/(n-2)} for the
/// standard bubble with T_c = -h_g/2, through Beta functions and a
/// half-line moment. h_g = 0 is allowed.
double bubble_total_energy(double R_g, double h_g, int n);

struct QuadEnergy {
  double value = 0.0;
  bool converged = true;
};
/// Same quantity by direct quadrature over (|x'|, x_n).
QuadEnergy bubble_total_energy_quadrature(double R_g, double h_g, int n);

/// R_g2 (n(n-1)/R_g2)^{n/2} omega_n / n, omega_n = |S^n|.
double S_c_infinity(const WarpedProductSpec& spec);

struct VolumeCheck {
  int n = 0;
  double integral = 0.0;     // int_{R^n_+} (2/(1+|x|^2))^n dx by quadrature
  double rel_err = 0.0;      // against omega_n / 2 with omega_n = |S^n|
  double rel_err_alt = 0.0;  // against |S^{n-1}| / 2
  bool converged = true;
};
VolumeCheck stereographic_volume_check(int n);

struct ThresholdReport {
  WarpedProductSpec spec;
  std::optional<double> threshold_k;  // empty when no grid point in [1, 1e12] works
  double I1_at_threshold = 0.0;
  double Sck_at_threshold = 0.0;
  double Sc_infinity = 0.0;
  bool exceeds_Sc_infinity_plus_1 = false;  // I[1] > S_c(inf) + 1 at the threshold
};
/// Smallest k with energy_of_one > S_c(k) + 1 on the grid 1.1^j, refined by
/// bisection to 1e-3 relative.
ThresholdReport threshold_k(const WarpedProductSpec& spec);

}  // namespace blowup::nonuniq
