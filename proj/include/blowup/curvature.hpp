#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "blowup/polynomial.hpp"

namespace blowup::curvature {

/// Rank-4 form on R^dim with the algebraic symmetries of a Weyl tensor.
///
/// Components are stored densely on the leading `block` coordinates
/// (row-major, index ((i*b + j)*b + k)*b + l) and are zero elsewhere. A
/// block smaller than dim is the zero extension of a lower-dimensional
/// tensor, which is again Weyl-like. The constructor does not validate
/// symmetries; use weyl_invariant_check.
class WeylLike {
 public:
  WeylLike(int dim, int block, std::vector<double> components);
  static WeylLike zero(int dim);

  int dim() const { return dim_; }
  int block() const { return block_; }
  const std::vector<double>& components() const { return c_; }

  double operator()(int i, int j, int k, int l) const {
    if (i >= block_ || j >= block_ || k >= block_ || l >= block_) return 0.0;
    return c_[index(i, j, k, l)];
  }
  /// Mutable access to a component inside the block.
  double& at(int i, int j, int k, int l) { return c_.at(index(i, j, k, l)); }

  WeylLike embedded(int dim) const;
  WeylLike scaled(double k) const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    const std::size_t b = static_cast<std::size_t>(block_);
    return ((static_cast<std::size_t>(i) * b + j) * b + k) * b + l;
  }

  int dim_;
  int block_;
  std::vector<double> c_;
};

/// Seeded random algebraic Weyl tensor on R^m, m >= 4. The output is a pure
/// function of (m, seed).
WeylLike random_weyl(int m, std::uint64_t seed);

/// random_weyl(block, seed) zero-extended to R^m.
WeylLike block_weyl(int m, int block, std::uint64_t seed);

struct WeylReport {
  double max_symmetry_violation = 0.0;  // pair (anti)symmetries and first Bianchi
  double max_trace = 0.0;
  double nondegeneracy_scalar = 0.0;
};

WeylReport weyl_invariant_check(const WeylLike& W);

/// sum_{ijkl} (W_ikjl + W_iljk)^2
double nondegeneracy_scalar(const WeylLike& W);

/// T_pq = sum_{ikl} (W_ipkl + W_ilkp)(W_iqkl + W_ilkq), a dim x dim Gram matrix.
Eigen::MatrixXd contraction_T(const WeylLike& W);

/// {"dimension": m, "block": b, "index_order": "row-major ijkl",
///  "components": [b^4 numbers]}
std::string weyl_to_json(const WeylLike& W);
WeylLike weyl_from_json(std::string_view text);

/// H_ij(x) = W_ikjl x^k x^l on the tangential indices, H_na = 0.
/// x has dim()+1 entries, the last one being the normal coordinate.
Eigen::MatrixXd h_field(std::span<const double> x, const WeylLike& W);

/// f(|x'|^2) H(x). Throws Error{config} unless 4 deg f < n - 6, n = x.size().
Eigen::MatrixXd hbar_field(std::span<const double> x, const WeylLike& W,
                           const ReductionPolynomial& f);

struct PerturbationSpec {
  WeylLike W;
  ReductionPolynomial f;
  double mu = 1.0;
  double lambda = 1.0;
  double rho = 1.0;

  /// 0 < mu <= 1, 0 < lambda <= rho <= 1 and the degree bound for n.
  void validate(int n) const;
};

/// C^2 cutoff: 1 for t <= 1, 0 for t >= 2, monotone quintic in between.
double cutoff_chi(double t);

/// Radial bump used on the annulus rho <= |x| <= min(2 rho, 1).
double radial_bump(double r, double rho);

/// mu lambda^{2d} f(lambda^{-2} |x'|^2) H(x) on |x| <= rho, zero for
/// |x| >= min(2 rho, 1), blended by radial_bump in between.
Eigen::MatrixXd perturbation_h(std::span<const double> x, const PerturbationSpec& spec);

/// sum_{N >= N0} chi(4N^2 |x - x_N|) 2^{-N} f(2^N |x' - x_N|^2) H(x - x_N),
/// x_N = (1/N, 0, ..., 0). Throws Error{config} for N0 < 3, where the first
/// support leaves the half ball of radius 1/2.
Eigen::MatrixXd glued_field(std::span<const double> x, const WeylLike& W,
                            const ReductionPolynomial& f, int N0);

/// Exact rational comparison of the support balls |x - x_N| < 1/(2N^2).
struct SupportReport {
  int N0 = 0;
  long N_max = 0;
  long consecutive_overlaps = 0;     // pairs (N, N+1) whose balls intersect
  long nonconsecutive_overlaps = 0;  // pairs (N, N+k), k >= 2
  bool inside_half_ball = false;     // every support within |x| < 1/2
  double largest_overlap = 0.0;      // max over pairs of (r_N + r_M - |x_N - x_M|)
};
SupportReport glued_support_report(int N0, long N_max);

struct PerturbationBound {
  double measured_constant = 0.0;  // max |h| / (mu (lambda + |x|)^{2d+2})
  int samples = 0;
};
PerturbationBound perturbation_bound(const PerturbationSpec& spec, int samples,
                                     std::uint64_t seed);

struct SmallnessReport {
  double sup_h_derivatives = 0.0;  // sampled sup of |h| + |dh| + |d^2 h|
  double log10_scale_ratio = 0.0;  // log10(mu^-2 lambda^{n-10} rho^{2-n})
  int samples = 0;
};
/// Needs deg f == 1. Derivatives by central differences at seeded points
/// in B_lambda^+ and in the support ball.
SmallnessReport smallness_report(const PerturbationSpec& spec, int n, int samples,
                                 std::uint64_t seed);

/// log10(mu^-2 lambda^{n-10} rho^{2-n}) without forming the power.
double log10_scale_ratio(double mu, double lambda, double rho, int n);

}  // namespace blowup::curvature
