#include "blowup/blowup.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "blowup/bubble.hpp"
#include "blowup/curvature.hpp"
#include "blowup/energy.hpp"
#include "blowup/error.hpp"
#include "blowup/nonuniq.hpp"
#include "blowup/reduction.hpp"
#include "blowup/reports.hpp"
#include "blowup/specfun.hpp"

struct blowup_report {
  blowup::reports::Report rep;
};

struct blowup_weyl {
  blowup::curvature::WeylLike W;
};

namespace {

thread_local std::string g_last_error;

blowup_status code_of(blowup::ErrorCode c) {
  using blowup::ErrorCode;
  switch (c) {
    case ErrorCode::domain: return BLOWUP_ERR_DOMAIN;
    case ErrorCode::config: return BLOWUP_ERR_CONFIG;
    case ErrorCode::divergent_moment: return BLOWUP_ERR_DIVERGENT_MOMENT;
    case ErrorCode::slow_convergence: return BLOWUP_ERR_SLOW_CONVERGENCE;
    case ErrorCode::not_converged: return BLOWUP_ERR_NOT_CONVERGED;
    case ErrorCode::no_real_root: return BLOWUP_ERR_NO_REAL_ROOT;
    case ErrorCode::degenerate_dimension: return BLOWUP_ERR_DEGENERATE_DIMENSION;
  }
  return BLOWUP_ERR_INTERNAL;
}

blowup_status fail(blowup_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

// Runs body with every exception mapped onto a status code.
template <class F>
blowup_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BLOWUP_OK;
  } catch (const blowup::Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BLOWUP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BLOWUP_ERR_INTERNAL, e.what());
  }
}

#define REQUIRE(cond) \
  if (!(cond)) return fail(BLOWUP_ERR_INVALID_ARGUMENT, "invalid argument: " #cond)

blowup::reports::RunConfig to_cpp(const blowup_run_config& c) {
  blowup::reports::RunConfig r;
  if (c.has_n) {
    r.n_lo = c.n_lo;
    r.n_hi = c.n_hi;
  }
  if (c.tc_count) r.tc.assign(c.tc, c.tc + c.tc_count);
  r.seed = c.seed;
  if (c.has_rel_tol) r.rel_tol = c.rel_tol;
  if (c.eps_count) r.eps.assign(c.eps, c.eps + c.eps_count);
  if (c.has_m) r.m = c.m;
  if (c.has_r) r.r = c.r;
  r.threads = c.threads;
  r.format = c.format == BLOWUP_FORMAT_JSON ? blowup::reports::Format::json
                                            : blowup::reports::Format::csv;
  return r;
}

blowup_status export_doubles(const std::vector<double>& v, double** values, size_t* count) {
  auto* buf = static_cast<double*>(std::malloc(sizeof(double) * (v.empty() ? 1 : v.size())));
  if (!buf) return fail(BLOWUP_ERR_INTERNAL, "out of memory");
  std::copy(v.begin(), v.end(), buf);
  *values = buf;
  *count = v.size();
  return BLOWUP_OK;
}

blowup::bubble::BubbleParams bubble_params(int n, double T_c, const double* xi, double eps) {
  blowup::bubble::BubbleParams p{n, T_c, {}, eps};
  if (n >= 2) p.xi.assign(xi, xi + (n - 1));
  p.validate();
  return p;
}

}  // namespace

extern "C" {

const char* blowup_last_error(void) { return g_last_error.c_str(); }

const char* blowup_status_name(blowup_status s) {
  switch (s) {
    case BLOWUP_OK: return "ok";
    case BLOWUP_ERR_DOMAIN: return "domain";
    case BLOWUP_ERR_CONFIG: return "config";
    case BLOWUP_ERR_DIVERGENT_MOMENT: return "divergent_moment";
    case BLOWUP_ERR_SLOW_CONVERGENCE: return "slow_convergence";
    case BLOWUP_ERR_NOT_CONVERGED: return "not_converged";
    case BLOWUP_ERR_NO_REAL_ROOT: return "no_real_root";
    case BLOWUP_ERR_DEGENERATE_DIMENSION: return "degenerate_dimension";
    case BLOWUP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BLOWUP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void blowup_run_config_init(blowup_run_config* cfg) {
  if (!cfg) return;
  std::memset(cfg, 0, sizeof *cfg);
  cfg->seed = 1;
  cfg->format = BLOWUP_FORMAT_CSV;
}

blowup_status blowup_run(blowup_command cmd, const blowup_run_config* cfg, blowup_report** out) {
  REQUIRE(cfg && out);
  REQUIRE((cfg->tc || !cfg->tc_count) && (cfg->eps || !cfg->eps_count));
  *out = nullptr;
  using namespace blowup::reports;
  Report (*fn)(const RunConfig&) = nullptr;
  switch (cmd) {
    case BLOWUP_CMD_SCAN: fn = run_scan; break;
    case BLOWUP_CMD_CQ: fn = run_cq; break;
    case BLOWUP_CMD_ENERGY_PROFILE: fn = run_energy_profile; break;
    case BLOWUP_CMD_HESSIAN: fn = run_hessian; break;
    case BLOWUP_CMD_MOMENTS: fn = run_moments; break;
    case BLOWUP_CMD_BUBBLE_CHECK: fn = run_bubble_check; break;
    case BLOWUP_CMD_NONUNIQ: fn = run_nonuniq; break;
  }
  REQUIRE(fn);
  return guarded([&] { *out = new blowup_report{fn(to_cpp(*cfg))}; });
}

const char* blowup_report_text(const blowup_report* rep) { return rep ? rep->rep.text.c_str() : ""; }
const char* blowup_report_summary(const blowup_report* rep) {
  return rep ? rep->rep.summary.c_str() : "";
}
int blowup_report_passed(const blowup_report* rep) { return rep && rep->rep.passed ? 1 : 0; }
void blowup_report_free(blowup_report* rep) { delete rep; }

blowup_status blowup_parse_grid(const char* text, double** values, size_t* count) {
  REQUIRE(text && values && count);
  std::vector<double> v;
  const blowup_status s = guarded([&] { v = blowup::reports::parse_grid(text); });
  return s == BLOWUP_OK ? export_doubles(v, values, count) : s;
}

blowup_status blowup_parse_list(const char* text, double** values, size_t* count) {
  REQUIRE(text && values && count);
  std::vector<double> v;
  const blowup_status s = guarded([&] { v = blowup::reports::parse_list(text); });
  return s == BLOWUP_OK ? export_doubles(v, values, count) : s;
}

blowup_status blowup_parse_range(const char* text, int* lo, int* hi) {
  REQUIRE(text && lo && hi);
  return guarded([&] { std::tie(*lo, *hi) = blowup::reports::parse_range(text); });
}

void blowup_free_doubles(double* values) { std::free(values); }

blowup_status blowup_beta(double p, double q, double* out) {
  REQUIRE(out);
  return guarded([&] { *out = blowup::specfun::beta(p, q); });
}

blowup_status blowup_sphere_area(int m, double* out) {
  REQUIRE(out);
  return guarded([&] {
    if (m < 1) throw blowup::Error(blowup::ErrorCode::domain, "sphere_area needs m >= 1");
    *out = blowup::specfun::sphere_area(m);
  });
}

blowup_status blowup_half_line_moment(double alpha, double a, blowup_moment_method method,
                                      double* log_value, double* value) {
  REQUIRE(log_value && value);
  REQUIRE(method >= BLOWUP_MOMENT_SERIES && method <= BLOWUP_MOMENT_AUTO);
  using namespace blowup::specfun;
  return guarded([&] {
    HalfLineMoment m;
    switch (method) {
      case BLOWUP_MOMENT_SERIES: m = half_line_moment_series(alpha, a); break;
      case BLOWUP_MOMENT_RECURSION: m = half_line_moment_recursion(alpha, a); break;
      case BLOWUP_MOMENT_QUADRATURE: m = half_line_moment_quadrature(alpha, a); break;
      case BLOWUP_MOMENT_AUTO: m = half_line_moment(alpha, a); break;
      default: throw blowup::Error(blowup::ErrorCode::config, "unknown moment method");
    }
    *log_value = m.log_value;
    *value = m.value;
  });
}

blowup_status blowup_c_q(int n, double T_c, int q, double* log_value, double* value) {
  REQUIRE(log_value && value);
  return guarded([&] {
    const auto m = blowup::specfun::c_q(n, T_c, q);
    *log_value = m.log_value;
    *value = m.value;
  });
}

blowup_status blowup_q_poly(long n, char* buf, size_t buf_size) {
  REQUIRE(buf && buf_size > 0);
  return guarded([&] {
    const std::string s = blowup::reduction::q_poly(n).str();
    if (s.size() + 1 > buf_size) throw blowup::Error(blowup::ErrorCode::config, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

blowup_status blowup_bound_certificate(long n, int* certified) {
  REQUIRE(certified);
  return guarded([&] { *certified = blowup::reduction::bound_certificate(n).certified ? 1 : 0; });
}

blowup_status blowup_a0_star(int n, double T_c, double* a0) {
  REQUIRE(a0);
  return guarded([&] {
    const auto v = blowup::reduction::a0_star(n, T_c);
    if (!v) throw blowup::Error(blowup::ErrorCode::no_real_root, "discriminant is negative");
    *a0 = *v;
  });
}

blowup_status blowup_dimension_row(int n, double T_c, double* a0, double* I1, double* Ip1,
                                   double* Ipp1, double* J1, int* direct_pass) {
  REQUIRE(a0 && I1 && Ip1 && Ipp1 && J1 && direct_pass);
  return guarded([&] {
    const auto r = blowup::reduction::dimension_row(n, T_c);
    if (!r.a0) throw blowup::Error(blowup::ErrorCode::no_real_root, "discriminant is negative");
    *a0 = *r.a0;
    *I1 = r.I1;
    *Ip1 = r.Ip1;
    *Ipp1 = r.Ipp1;
    *J1 = r.J1;
    *direct_pass = r.direct_pass() ? 1 : 0;
  });
}

blowup_status blowup_weyl_random(int m, uint64_t seed, blowup_weyl** out) {
  REQUIRE(out);
  return guarded([&] { *out = new blowup_weyl{blowup::curvature::random_weyl(m, seed)}; });
}

blowup_status blowup_weyl_block(int m, int block, uint64_t seed, blowup_weyl** out) {
  REQUIRE(out);
  return guarded([&] { *out = new blowup_weyl{blowup::curvature::block_weyl(m, block, seed)}; });
}

blowup_status blowup_weyl_from_json(const char* json, blowup_weyl** out) {
  REQUIRE(json && out);
  return guarded([&] { *out = new blowup_weyl{blowup::curvature::weyl_from_json(json)}; });
}

blowup_status blowup_weyl_to_json(const blowup_weyl* W, char** json) {
  REQUIRE(W && json);
  return guarded([&] {
    const std::string s = blowup::curvature::weyl_to_json(W->W);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *json = buf;
  });
}

int blowup_weyl_dim(const blowup_weyl* W) { return W ? W->W.dim() : 0; }

blowup_status blowup_weyl_component(const blowup_weyl* W, int i, int j, int k, int l,
                                    double* out) {
  REQUIRE(W && out);
  const int d = W->W.dim();
  for (int v : {i, j, k, l})
    if (v < 0 || v >= d) return fail(BLOWUP_ERR_DOMAIN, "index out of range");
  *out = W->W(i, j, k, l);
  g_last_error.clear();
  return BLOWUP_OK;
}

blowup_status blowup_weyl_nondegeneracy(const blowup_weyl* W, double* out) {
  REQUIRE(W && out);
  return guarded([&] { *out = blowup::curvature::nondegeneracy_scalar(W->W); });
}

blowup_status blowup_weyl_check(const blowup_weyl* W, double* symmetry, double* trace) {
  REQUIRE(W && symmetry && trace);
  return guarded([&] {
    const auto r = blowup::curvature::weyl_invariant_check(W->W);
    *symmetry = r.max_symmetry_violation;
    *trace = r.max_trace;
  });
}

void blowup_weyl_free(blowup_weyl* W) { delete W; }
void blowup_free_string(char* s) { std::free(s); }

blowup_status blowup_F0_closed(double eps, int n, double T_c, double nondeg, double* out) {
  REQUIRE(out);
  return guarded([&] {
    *out = blowup::energy::F0_closed(eps, n, T_c, nondeg, blowup::reduction::construct_f(n, T_c));
  });
}

blowup_status blowup_F0_quadrature(double eps, int n, double T_c, double nondeg, double* out,
                                   int* converged) {
  REQUIRE(out && converged);
  return guarded([&] {
    const auto q =
        blowup::energy::F0_quadrature(eps, n, T_c, nondeg, blowup::reduction::construct_f(n, T_c));
    *out = q.value;
    *converged = q.converged ? 1 : 0;
  });
}

blowup_status blowup_hessian_min_eigenvalue(double eps, int n, double T_c, const blowup_weyl* W,
                                            double* out) {
  REQUIRE(W && out);
  return guarded([&] {
    *out = blowup::energy::hessian_xi(eps, n, T_c, W->W, blowup::reduction::construct_f(n, T_c),
                                      false)
               .min_eigenvalue;
  });
}

blowup_status blowup_bubble_eval(int n, double T_c, const double* xi, double eps, const double* x,
                                 double* out) {
  REQUIRE(xi && x && out);
  return guarded([&] {
    const auto p = bubble_params(n, T_c, xi, eps);
    *out = blowup::bubble::eval_bubble(p, std::span<const double>(x, n));
  });
}

blowup_status blowup_bubble_residuals(int n, double T_c, const double* xi, double eps,
                                      const double* x, double* interior, double* boundary,
                                      double* einstein) {
  REQUIRE(xi && x && interior && boundary && einstein);
  return guarded([&] {
    const auto p = bubble_params(n, T_c, xi, eps);
    const std::span<const double> xs(x, n);
    *interior = blowup::bubble::interior_residual(p, xs);
    *boundary = blowup::bubble::boundary_residual(p, xs.first(n - 1));
    *einstein = blowup::bubble::einstein_residual(p, xs).cwiseAbs().maxCoeff();
  });
}

blowup_status blowup_bubble_total_energy(double R_g, double h_g, int n, double* out) {
  REQUIRE(out);
  return guarded([&] { *out = blowup::nonuniq::bubble_total_energy(R_g, h_g, n); });
}

blowup_status blowup_threshold_k(double* k, int* found) {
  REQUIRE(k && found);
  return guarded([&] {
    const auto r = blowup::nonuniq::threshold_k(blowup::nonuniq::WarpedProductSpec{});
    *found = r.threshold_k ? 1 : 0;
    *k = r.threshold_k.value_or(0.0);
  });
}

}  // extern "C"
