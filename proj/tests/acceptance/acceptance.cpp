// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "blowup/bubble.hpp"
#include "blowup/curvature.hpp"
#include "blowup/energy.hpp"
#include "blowup/nonuniq.hpp"
#include "blowup/reduction.hpp"
#include "blowup/sampling.hpp"
#include "blowup/specfun.hpp"

using namespace blowup;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

const std::vector<double> kTc{-0.1, -0.5, -1.0, -2.0, -5.0, -10.0};

Outcome critical_dimension() {
  const std::vector<double> tc{-1.0};
  const auto t0 = std::chrono::steady_clock::now();
  const reduction::ScanResult s = reduction::certificate_scan(25, 200, tc);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto q62 = reduction::q_poly(62), q61 = reduction::q_poly(61);
  const long first = s.minimal_certified_n.value_or(-1);
  const bool ok = first == 62 && q62 == 2628 && q61 == -544 && secs < 1.0;
  return {ok, fmt("first certified n=%ld, q(62)=%s, q(61)=%s, scan %.3f s", first, q62.str().c_str(),
                  q61.str().c_str(), secs)};
}

Outcome direct_construction() {
  const auto t0 = std::chrono::steady_clock::now();
  const reduction::ScanResult s = reduction::certificate_scan(62, 150, kTc);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int failures = 0;
  for (const auto& row : s.rows) failures += !row.direct_pass();
  const bool ok = failures == 0 && s.rows.size() == 89 * kTc.size() && secs < 30.0;
  return {ok, fmt("%zu rows, %d failing, %.3f s", s.rows.size(), failures, secs)};
}

Outcome ratio_bounds() {
  int bad = 0, total = 0;
  for (int n = 25; n <= 200; ++n)
    for (int k = 0; k < 20; ++k) {
      const double a = 0.01 * std::pow(1e4, k / 19.0);
      bad += !reduction::ratio_bounds(n, -a).holds();
      ++total;
    }
  return {bad == 0, fmt("%d of %d (n, T_c) points violate a bound", bad, total)};
}

Outcome half_line_moments() {
  double worst = 0.0;
  int points = 0;
  for (double alpha = 1.0; alpha <= 40.0; alpha += 0.5)
    for (int k = 0; k <= 30; ++k) {
      const double a = 0.06 * std::pow(100.0 / 0.06, k / 30.0);
      const auto s = specfun::half_line_moment_series(alpha, a);
      const auto r = specfun::half_line_moment_recursion(alpha, a);
      const auto q = specfun::half_line_moment_quadrature(alpha, a);
      worst = std::max({worst, std::fabs(std::expm1(s.log_value - q.log_value)),
                        std::fabs(std::expm1(r.log_value - q.log_value)),
                        std::fabs(std::expm1(s.log_value - r.log_value))});
      ++points;
    }
  const double pi = std::numbers::pi;
  const double i1 = specfun::half_line_moment(1.0, 1.0).value;
  const double i4 = specfun::half_line_moment(4.0, 1.0).value;
  const double e1 = rel(i1, pi / 4), e4 = rel(i4, 5 * pi / 64 - 11.0 / 48);
  return {worst <= 1e-10 && e1 <= 1e-12 && e4 <= 1e-12,
          fmt("worst pairwise %.2e over %d points; I_1(1) err %.1e, I_4(1) err %.1e", worst, points, e1, e4)};
}

Outcome moment_identities() {
  double worst = 0.0;
  int rows = 0;
  for (int m : {4, 5, 6})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const curvature::WeylLike W = curvature::random_weyl(m, seed);
      const ReductionPolynomial f{1.0 + 0.25 * seed, -1.0, 0.3};
      for (double r : {0.5, 1.0, 2.0})
        for (const auto& row : energy::moment_identity_table(W, f, r)) {
          worst = std::max(worst, row.result.rel_err);
          ++rows;
        }
    }
  return {worst <= 1e-10, fmt("worst rel_err %.2e over %d identity entries", worst, rows)};
}

Outcome reduced_energy() {
  double worst_f = 0.0, worst_h = 0.0;
  bool conv = true;
  for (int n : {13, 62}) {
    // No real optimal root exists at n = 13; the linear profile 1 - s is used there.
    const ReductionPolynomial f = n == 62 ? reduction::construct_f(n, -1.0) : ReductionPolynomial{1.0, -1.0};
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto q = energy::F0_quadrature(eps, n, -1.0, 1.0, f);
      worst_f = std::max(worst_f, rel(energy::F0_closed(eps, n, -1.0, 1.0, f), q.value));
      const auto jj = energy::hessian_JJ_quadrature(eps, n, -1.0, f);
      const auto kk = energy::hessian_KK_quadrature(eps, n, -1.0, f);
      worst_h = std::max({worst_h, rel(energy::hessian_JJ_closed(eps, n, -1.0, f), jj.value),
                          rel(energy::hessian_KK_closed(eps, n, -1.0, f), kk.value)});
      conv = conv && q.converged && jj.converged && kk.converged;
    }
  }
  return {conv && worst_f <= 1e-6 && worst_h <= 1e-6,
          fmt("F0 worst %.2e, Hessian scalars worst %.2e", worst_f, worst_h)};
}

Outcome local_minimum() {
  const curvature::WeylLike W = curvature::block_weyl(61, 4, 1);
  bool global_ok = true, local_ok = true;
  std::string detail;
  for (double T : {-0.1, -1.0, -10.0}) {
    const auto r = energy::local_min_check(62, T, W, reduction::construct_f(62, T));
    global_ok = global_ok && r.passed();
    local_ok = local_ok && r.strict_local_min();
    detail += fmt("T_c=%g: argmin[0.5,2]=%.6f, argmin[0.5,%.3f]=%.9f, F0''(1)=%.2e, min eig=%.2e; ", T,
                  r.minimizer, r.local_bracket_hi, r.local_minimizer, r.d2F0_deps2, r.hessian_min_eigenvalue);
  }
  if (!global_ok)
    detail += fmt("F0=-K I(eps^2) is unbounded below and F0(2)<F0(1), so the minimizer on [0.5,2] is the "
                  "endpoint 2; strict local minimum at 1 %s",
                  local_ok ? "holds" : "does NOT hold");
  return {global_ok, detail};
}

Outcome bubble_identities() {
  double worst = 0.0;
  for (int n : {5, 13, 62}) {
    Sampler rng(1000 + n);
    for (int k = 0; k < 100; ++k) {
      bubble::BubbleParams p{n, -rng.uniform(0.1, 3.0), std::vector<double>(n - 1), rng.uniform(0.5, 2.0)};
      for (double& v : p.xi) v = rng.uniform(-1.0, 1.0);
      std::vector<double> y = rng.in_half_ball(n, 3.0 * p.eps);
      for (int i = 0; i < n - 1; ++i) y[i] += p.xi[i];
      y[n - 1] = std::max(y[n - 1], 1e-3 * p.eps);
      const std::vector<double> xb(y.begin(), y.end() - 1);
      worst = std::max({worst, std::fabs(bubble::interior_residual(p, y)),
                        std::fabs(bubble::boundary_residual(p, xb)),
                        bubble::einstein_residual(p, y).cwiseAbs().maxCoeff()});
    }
  }
  const int n = 13;
  const std::vector<bubble::KernelSample> samples{
      {std::vector<double>(n - 1, 0.0), 1.0}, {std::vector<double>(n - 1, 0.4), 0.5},
      {std::vector<double>(n - 1, -0.8), 2.5}};
  double spread = 0.0;
  bool conv = true;
  for (int a : {1, n}) {
    const auto r = bubble::kernel_norm_constancy(n, -1.0, a, samples);
    spread = std::max({spread, r.interior_spread, r.boundary_spread});
    conv = conv && r.converged;
  }
  return {worst <= 1e-9 && spread <= 1e-6 && conv,
          fmt("worst residual %.2e over 300 points; kernel spread %.2e", worst, spread)};
}

Outcome warped_example() {
  const auto v5 = nonuniq::stereographic_volume_check(5), v6 = nonuniq::stereographic_volume_check(6);
  const bool volume = v5.rel_err <= 1e-8 && v6.rel_err <= 1e-8 && v5.converged && v6.converged;
  const bool falsified = v5.rel_err_alt > 1e-3 && v6.rel_err_alt > 1e-3;
  const nonuniq::WarpedProductSpec spec;
  const auto t = nonuniq::threshold_k(spec);
  const double margin = t.I1_at_threshold - t.Sck_at_threshold;
  const auto w = nonuniq::warped_invariants(spec, 1e6);
  const double inf = nonuniq::S_c_infinity(spec);
  const double gap = std::fabs(nonuniq::bubble_total_energy(w.R_g, w.h_g, spec.n()) - inf) / inf;
  const bool ok = volume && falsified && t.threshold_k && margin > 1.0 && gap <= 0.01;
  return {ok, fmt("volume err %.1e/%.1e, alt-convention err %.3f/%.3f, k*=%.3f margin %.3f, S_c gap %.2e",
                  v5.rel_err, v6.rel_err, v5.rel_err_alt, v6.rel_err_alt, t.threshold_k.value_or(-1.0),
                  margin, gap)};
}

std::string capture(const std::string& args) {
  const std::string cmd = std::string(BLOWUP_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  pclose(p);
  return out;
}

Outcome determinism() {
  const char* cmds[] = {"scan", "cq", "energy-profile", "hessian", "moments", "bubble-check", "nonuniq"};
  int compared = 0, differ = 0;
  for (const char* c : cmds)
    for (const char* f : {"csv", "json"}) {
      const std::string args = fmt("%s --seed 11 --format %s", c, f);
      const std::string a = capture(args + " --threads 1"), b = capture(args + " --threads 4");
      differ += a != b || a.empty();
      ++compared;
    }
  return {differ == 0, fmt("%d of %d report pairs byte-identical", compared - differ, compared)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"critical dimension certificate", critical_dimension},
      {"direct construction check", direct_construction},
      {"moment ratio bounds", ratio_bounds},
      {"half-line moment agreement", half_line_moments},
      {"sphere moment identities", moment_identities},
      {"reduced energy equivalence", reduced_energy},
      {"strict local minimum at (0,1)", local_minimum},
      {"bubble identities", bubble_identities},
      {"warped-product example", warped_example},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %-32s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
