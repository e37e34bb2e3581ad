#include "blowup/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "blowup/error.hpp"
#include "blowup/sampling.hpp"

namespace blowup::curvature {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Rank-4 scratch array of side b.
struct Array4 {
  explicit Array4(int b) : b(b), v(static_cast<std::size_t>(b) * b * b * b, 0.0) {}
  double& operator()(int i, int j, int k, int l) { return v[((std::size_t(i) * b + j) * b + k) * b + l]; }
  double operator()(int i, int j, int k, int l) const {
    return v[((std::size_t(i) * b + j) * b + k) * b + l];
  }
  int b;
  std::vector<double> v;
};

double smoothstep5(double s) { return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s); }

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Tangential |x'|^2 where x' drops the last (normal) coordinate.
double tangential_norm2(std::span<const double> x) { return norm2(x.first(x.size() - 1)); }

void check_point(std::span<const double> x, const WeylLike& W) {
  if (static_cast<int>(x.size()) != W.dim() + 1)
    throw Error(ErrorCode::domain, "point must have dim(W) + 1 coordinates");
}

void check_degree(const ReductionPolynomial& f, int n) {
  if (4 * f.degree() >= n - 6)
    throw Error(ErrorCode::config, "polynomial degree must satisfy 4 d < n - 6");
}

// H restricted to the leading block, H_ij = W_ikjl x_k x_l.
Eigen::MatrixXd h_block(std::span<const double> x, const WeylLike& W) {
  const int b = W.block();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = i; j < b; ++j) {
      double s = 0.0;
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) s += W(i, k, j, l) * x[k] * x[l];
      H(i, j) = s;
      H(j, i) = s;
    }
  return H;
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& block, int size) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
  M.topLeftCorner(block.rows(), block.cols()) = block;
  return M;
}

double outer_radius(double rho) { return std::min(2.0 * rho, 1.0); }

// Block part of perturbation_h.
Eigen::MatrixXd perturbation_block(std::span<const double> x, const PerturbationSpec& spec) {
  const double r = std::sqrt(norm2(x));
  const double bump = radial_bump(r, spec.rho);
  const int b = spec.W.block();
  if (bump == 0.0) return Eigen::MatrixXd::Zero(b, b);
  const double lam2 = spec.lambda * spec.lambda;
  const double scale =
      spec.mu * std::pow(lam2, spec.f.degree()) * spec.f(tangential_norm2(x) / lam2);
  return bump * scale * h_block(x, spec.W);
}

}  // namespace

WeylLike::WeylLike(int dim, int block, std::vector<double> components)
    : dim_(dim), block_(block), c_(std::move(components)) {
  if (block < 0 || block > dim) throw Error(ErrorCode::domain, "block must lie in [0, dim]");
  const std::size_t b = static_cast<std::size_t>(block);
  if (c_.size() != b * b * b * b)
    throw Error(ErrorCode::domain, "component count must be block^4");
}

WeylLike WeylLike::zero(int dim) { return WeylLike(dim, 0, {}); }

WeylLike WeylLike::embedded(int dim) const {
  if (dim < block_) throw Error(ErrorCode::domain, "cannot embed into a smaller space");
  return WeylLike(dim, block_, c_);
}

WeylLike WeylLike::scaled(double k) const {
  std::vector<double> c = c_;
  for (double& v : c) v *= k;
  return WeylLike(dim_, block_, std::move(c));
}

WeylLike random_weyl(int m, std::uint64_t seed) {
  if (m < 4) throw Error(ErrorCode::degenerate_dimension, "algebraic Weyl tensors vanish for m <= 3");
  Sampler rng(seed);
  Array4 A(m);
  for (double& v : A.v) v = rng.uniform(-1.0, 1.0);

  // Antisymmetrize both pairs, then symmetrize under pair exchange.
  Array4 B(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          B(i, j, k, l) = 0.25 * (A(i, j, k, l) - A(j, i, k, l) - A(i, j, l, k) + A(j, i, l, k));
  Array4 C(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) C(i, j, k, l) = 0.5 * (B(i, j, k, l) + B(k, l, i, j));

  // Remove the totally antisymmetric part so the first Bianchi identity holds.
  Array4 R(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          R(i, j, k, l) =
              C(i, j, k, l) - (C(i, j, k, l) + C(i, k, l, j) + C(i, l, j, k)) / 3.0;

  // Subtract the Kulkarni-Nomizu product of the Schouten tensor with delta.
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i) ric(j, l) += R(i, j, i, l);
  const double scal = ric.trace();
  const Eigen::MatrixXd P =
      (ric - scal / (2.0 * (m - 1)) * Eigen::MatrixXd::Identity(m, m)) / (m - 2);
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  std::vector<double> out(A.v.size());
  std::size_t idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const double kn = P(i, k) * delta(j, l) + P(j, l) * delta(i, k) -
                            P(i, l) * delta(j, k) - P(j, k) * delta(i, l);
          out[idx++] = R(i, j, k, l) - kn;
        }
  return WeylLike(m, m, std::move(out));
}

WeylLike block_weyl(int m, int block, std::uint64_t seed) {
  if (block > m) throw Error(ErrorCode::domain, "block larger than ambient dimension");
  return random_weyl(block, seed).embedded(m);
}

WeylReport weyl_invariant_check(const WeylLike& W) {
  WeylReport rep;
  const int b = W.block();
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) {
          const double w = W(i, j, k, l);
          const double v = std::max({std::fabs(w + W(j, i, k, l)), std::fabs(w + W(i, j, l, k)),
                                     std::fabs(w - W(k, l, i, j)),
                                     std::fabs(w + W(i, k, l, j) + W(i, l, j, k))});
          rep.max_symmetry_violation = std::max(rep.max_symmetry_violation, v);
        }
  for (int j = 0; j < b; ++j)
    for (int l = 0; l < b; ++l) {
      double t = 0.0;
      for (int i = 0; i < b; ++i) t += W(i, j, i, l);
      rep.max_trace = std::max(rep.max_trace, std::fabs(t));
    }
  rep.nondegeneracy_scalar = nondegeneracy_scalar(W);
  return rep;
}

double nondegeneracy_scalar(const WeylLike& W) {
  const int b = W.block();
  double s = 0.0;
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) {
          const double v = W(i, k, j, l) + W(i, l, j, k);
          s += v * v;
        }
  return s;
}

Eigen::MatrixXd contraction_T(const WeylLike& W) {
  const int b = W.block();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(b, b);
  for (int p = 0; p < b; ++p)
    for (int q = p; q < b; ++q) {
      double s = 0.0;
      for (int i = 0; i < b; ++i)
        for (int k = 0; k < b; ++k)
          for (int l = 0; l < b; ++l)
            s += (W(i, p, k, l) + W(i, l, k, p)) * (W(i, q, k, l) + W(i, l, k, q));
      T(p, q) = s;
      T(q, p) = s;
    }
  return embed(T, W.dim());
}

std::string weyl_to_json(const WeylLike& W) {
  nlohmann::ordered_json j;
  j["dimension"] = W.dim();
  j["block"] = W.block();
  j["index_order"] = "row-major ijkl";
  j["components"] = W.components();
  return j.dump();
}

WeylLike weyl_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return WeylLike(j.at("dimension").get<int>(), j.at("block").get<int>(),
                    j.at("components").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("bad Weyl tensor JSON: ") + e.what());
  }
}

Eigen::MatrixXd h_field(std::span<const double> x, const WeylLike& W) {
  check_point(x, W);
  return embed(h_block(x, W), W.dim() + 1);
}

Eigen::MatrixXd hbar_field(std::span<const double> x, const WeylLike& W,
                           const ReductionPolynomial& f) {
  check_point(x, W);
  check_degree(f, static_cast<int>(x.size()));
  return f(tangential_norm2(x)) * h_field(x, W);
}

void PerturbationSpec::validate(int n) const {
  if (!(mu > 0.0 && mu <= 1.0)) throw Error(ErrorCode::config, "mu must lie in (0, 1]");
  if (!(lambda > 0.0 && lambda <= rho && rho <= 1.0))
    throw Error(ErrorCode::config, "need 0 < lambda <= rho <= 1");
  if (W.dim() + 1 != n) throw Error(ErrorCode::config, "Weyl tensor must live on R^{n-1}");
  check_degree(f, n);
}

double cutoff_chi(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  return 1.0 - smoothstep5(t - 1.0);
}

double radial_bump(double r, double rho) {
  if (r <= rho) return 1.0;
  const double R = outer_radius(rho);
  if (r >= R) return 0.0;
  return 1.0 - smoothstep5((r - rho) / (R - rho));
}

Eigen::MatrixXd perturbation_h(std::span<const double> x, const PerturbationSpec& spec) {
  check_point(x, spec.W);
  spec.validate(static_cast<int>(x.size()));
  return embed(perturbation_block(x, spec), spec.W.dim() + 1);
}

Eigen::MatrixXd glued_field(std::span<const double> x, const WeylLike& W,
                            const ReductionPolynomial& f, int N0) {
  check_point(x, W);
  if (N0 < 3) throw Error(ErrorCode::config, "N0 must be at least 3 to keep supports in B_{1/2}");
  check_degree(f, static_cast<int>(x.size()));
  const int dim = W.dim() + 1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  const double x1 = x[0];
  if (x1 <= 0.0 || W.dim() < 1) return out;
  // Only N within a couple of units of 1/x_1 can have x in their support.
  const double guess = 1.0 / x1;
  if (guess > 1.0e6) return out;
  const long lo = std::max<long>(N0, static_cast<long>(std::floor(guess)) - 2);
  const long hi = static_cast<long>(std::ceil(guess)) + 2;
  std::vector<double> y(x.begin(), x.end());
  for (long N = lo; N <= hi; ++N) {
    y[0] = x1 - 1.0 / static_cast<double>(N);
    const double dist = std::sqrt(norm2(y));
    const double chi = cutoff_chi(4.0 * double(N) * double(N) * dist);
    if (chi == 0.0) continue;
    // 2^{-N} f(2^N s) = sum_i a_i 2^{N(i-1)} s^i
    const double s = tangential_norm2(y);
    double weight = 0.0;
    for (int i = f.degree(); i >= 0; --i) weight = weight * s + std::ldexp(f.coeff(i), int(N) * (i - 1));
    out.topLeftCorner(W.block(), W.block()) += chi * weight * h_block(y, W);
  }
  return out;
}

SupportReport glued_support_report(int N0, long N_max) {
  if (N0 < 1 || N_max < N0) throw Error(ErrorCode::config, "need 1 <= N0 <= N_max");
  SupportReport rep;
  rep.N0 = N0;
  rep.N_max = N_max;
  rep.inside_half_ball = true;
  rep.largest_overlap = -std::numeric_limits<double>::infinity();
  auto radius = [](long N) { return Rational(1, 2 * N * N); };
  auto center = [](long N) { return Rational(1, N); };
  for (long N = N0; N <= N_max; ++N) {
    if (center(N) + radius(N) >= Rational(1, 2)) rep.inside_half_ball = false;
    // Gaps grow faster than radii beyond M = N + 2, so two neighbours suffice.
    for (long M = N + 1; M <= std::min(N + 2, N_max); ++M) {
      const Rational overlap = radius(N) + radius(M) - (center(N) - center(M));
      rep.largest_overlap = std::max(rep.largest_overlap, static_cast<double>(overlap));
      if (overlap > 0) {
        if (M == N + 1)
          ++rep.consecutive_overlaps;
        else
          ++rep.nonconsecutive_overlaps;
      }
    }
  }
  return rep;
}

PerturbationBound perturbation_bound(const PerturbationSpec& spec, int samples,
                                     std::uint64_t seed) {
  const int n = spec.W.dim() + 1;
  spec.validate(n);
  Sampler rng(seed);
  PerturbationBound out;
  out.samples = samples;
  const int power = 2 * spec.f.degree() + 2;
  for (int s = 0; s < samples; ++s) {
    const double radius = (s % 2 == 0) ? outer_radius(spec.rho) : spec.lambda;
    const std::vector<double> x = rng.in_half_ball(n, radius);
    const double h = perturbation_block(x, spec).norm();
    const double r = std::sqrt(norm2(x));
    out.measured_constant =
        std::max(out.measured_constant, h / (spec.mu * std::pow(spec.lambda + r, power)));
  }
  return out;
}

double log10_scale_ratio(double mu, double lambda, double rho, int n) {
  return -2.0 * std::log10(mu) + (n - 10) * std::log10(lambda) + (2 - n) * std::log10(rho);
}

SmallnessReport smallness_report(const PerturbationSpec& spec, int n, int samples,
                                 std::uint64_t seed) {
  if (spec.f.degree() != 1) throw Error(ErrorCode::config, "smallness report assumes deg f = 1");
  spec.validate(n);
  SmallnessReport rep;
  rep.samples = samples;
  rep.log10_scale_ratio = log10_scale_ratio(spec.mu, spec.lambda, spec.rho, n);
  Sampler rng(seed);
  for (int s = 0; s < samples; ++s) {
    const double radius = (s % 2 == 0) ? outer_radius(spec.rho) : spec.lambda;
    std::vector<double> x = rng.in_half_ball(n, radius);
    const double step = 1.0e-3 * radius;
    auto at = [&](int c, double dc, int d, double dd) {
      std::vector<double> y = x;
      if (c >= 0) y[c] += dc;
      if (d >= 0) y[d] += dd;
      return perturbation_block(y, spec);
    };
    const Eigen::MatrixXd h0 = at(-1, 0, -1, 0);
    double d1 = 0.0, d2 = 0.0;
    for (int c = 0; c < n; ++c) {
      const Eigen::MatrixXd hp = at(c, step, -1, 0), hm = at(c, -step, -1, 0);
      d1 += ((hp - hm) / (2.0 * step)).squaredNorm();
      d2 += ((hp - 2.0 * h0 + hm) / (step * step)).squaredNorm();
      for (int d = c + 1; d < n; ++d) {
        const Eigen::MatrixXd mixed = (at(c, step, d, step) - at(c, step, d, -step) -
                                       at(c, -step, d, step) + at(c, -step, d, -step)) /
                                      (4.0 * step * step);
        d2 += 2.0 * mixed.squaredNorm();
      }
    }
    rep.sup_h_derivatives = std::max(rep.sup_h_derivatives, h0.norm() + std::sqrt(d1) + std::sqrt(d2));
  }
  return rep;
}

}  // namespace blowup::curvature
