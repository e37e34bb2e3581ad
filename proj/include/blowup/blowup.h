#ifndef BLOWUP_BLOWUP_H
#define BLOWUP_BLOWUP_H

#include <stddef.h>
#include <stdint.h>

#if defined(BLOWUP_BUILDING_LIBRARY)
#define BLOWUP_API __attribute__((visibility("default")))
#else
#define BLOWUP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blowup_status {
  BLOWUP_OK = 0,
  BLOWUP_ERR_DOMAIN = 1,
  BLOWUP_ERR_CONFIG = 2,
  BLOWUP_ERR_DIVERGENT_MOMENT = 3,
  BLOWUP_ERR_SLOW_CONVERGENCE = 4,
  BLOWUP_ERR_NOT_CONVERGED = 5,
  BLOWUP_ERR_NO_REAL_ROOT = 6,
  BLOWUP_ERR_DEGENERATE_DIMENSION = 7,
  BLOWUP_ERR_INVALID_ARGUMENT = 8, /* null pointer or bad enum */
  BLOWUP_ERR_INTERNAL = 9
} blowup_status;

/* Message of the last failing call on this thread; "" after success. */
BLOWUP_API const char* blowup_last_error(void);
BLOWUP_API const char* blowup_status_name(blowup_status status);

/* ---- batch reports ---------------------------------------------------- */

typedef enum blowup_format { BLOWUP_FORMAT_CSV = 0, BLOWUP_FORMAT_JSON = 1 } blowup_format;

/* Unset optional fields are flagged by has_* = 0; empty lists use count 0. */
typedef struct blowup_run_config {
  int has_n;
  int n_lo, n_hi;
  const double* tc;
  size_t tc_count;
  uint64_t seed;
  int has_rel_tol;
  double rel_tol;
  const double* eps;
  size_t eps_count;
  int has_m;
  int m;
  int has_r;
  double r;
  int threads; /* 0: hardware concurrency, capped by BLOWUP_THREADS */
  blowup_format format;
} blowup_run_config;

BLOWUP_API void blowup_run_config_init(blowup_run_config* cfg);

typedef struct blowup_report blowup_report;

typedef enum blowup_command {
  BLOWUP_CMD_SCAN = 0,
  BLOWUP_CMD_CQ,
  BLOWUP_CMD_ENERGY_PROFILE,
  BLOWUP_CMD_HESSIAN,
  BLOWUP_CMD_MOMENTS,
  BLOWUP_CMD_BUBBLE_CHECK,
  BLOWUP_CMD_NONUNIQ
} blowup_command;

BLOWUP_API blowup_status blowup_run(blowup_command cmd, const blowup_run_config* cfg,
                                    blowup_report** out);
BLOWUP_API const char* blowup_report_text(const blowup_report* rep);
BLOWUP_API const char* blowup_report_summary(const blowup_report* rep);
BLOWUP_API int blowup_report_passed(const blowup_report* rep);
BLOWUP_API void blowup_report_free(blowup_report* rep);

/* Parsers for the command-line grammar: "a:b:step", "a..b" or "a", "x,y,z".
   Array results are allocated by the library and released with blowup_free_doubles. */
BLOWUP_API blowup_status blowup_parse_grid(const char* text, double** values, size_t* count);
BLOWUP_API blowup_status blowup_parse_list(const char* text, double** values, size_t* count);
BLOWUP_API blowup_status blowup_parse_range(const char* text, int* lo, int* hi);
BLOWUP_API void blowup_free_doubles(double* values);

/* ---- special functions and moments ------------------------------------ */

BLOWUP_API blowup_status blowup_beta(double p, double q, double* out);
/* Area of the unit sphere S^{m-1} in R^m. */
BLOWUP_API blowup_status blowup_sphere_area(int m, double* out);

typedef enum blowup_moment_method {
  BLOWUP_MOMENT_SERIES = 0,
  BLOWUP_MOMENT_RECURSION = 1,
  BLOWUP_MOMENT_QUADRATURE = 2,
  BLOWUP_MOMENT_AUTO = 3
} blowup_moment_method;

/* log I_alpha(a) and I_alpha(a) = int_a^inf (1+r^2)^{-alpha} dr. */
BLOWUP_API blowup_status blowup_half_line_moment(double alpha, double a,
                                                 blowup_moment_method method,
                                                 double* log_value, double* value);
BLOWUP_API blowup_status blowup_c_q(int n, double T_c, int q, double* log_value,
                                    double* value);

/* ---- reduction -------------------------------------------------------- */

/* q(n) as decimal text, written into buf (NUL terminated). */
BLOWUP_API blowup_status blowup_q_poly(long n, char* buf, size_t buf_size);
BLOWUP_API blowup_status blowup_bound_certificate(long n, int* certified);
BLOWUP_API blowup_status blowup_a0_star(int n, double T_c, double* a0);
/* f = a0 + s: the coefficient pair, and I, I', I'', J at s = 1. */
BLOWUP_API blowup_status blowup_dimension_row(int n, double T_c, double* a0, double* I1,
                                              double* Ip1, double* Ipp1, double* J1,
                                              int* direct_pass);

/* ---- curvature -------------------------------------------------------- */

typedef struct blowup_weyl blowup_weyl;

BLOWUP_API blowup_status blowup_weyl_random(int m, uint64_t seed, blowup_weyl** out);
BLOWUP_API blowup_status blowup_weyl_block(int m, int block, uint64_t seed, blowup_weyl** out);
BLOWUP_API blowup_status blowup_weyl_from_json(const char* json, blowup_weyl** out);
/* Library-allocated JSON text; release with blowup_free_string. */
BLOWUP_API blowup_status blowup_weyl_to_json(const blowup_weyl* W, char** json);
BLOWUP_API int blowup_weyl_dim(const blowup_weyl* W);
BLOWUP_API blowup_status blowup_weyl_component(const blowup_weyl* W, int i, int j, int k, int l,
                                               double* out);
BLOWUP_API blowup_status blowup_weyl_nondegeneracy(const blowup_weyl* W, double* out);
/* Worst symmetry/Bianchi violation and worst trace. */
BLOWUP_API blowup_status blowup_weyl_check(const blowup_weyl* W, double* symmetry,
                                           double* trace);
BLOWUP_API void blowup_weyl_free(blowup_weyl* W);
BLOWUP_API void blowup_free_string(char* s);

/* ---- energy ----------------------------------------------------------- */

/* F(0, eps) with f = construct_f(n, T_c) and a given nondegeneracy scalar. */
BLOWUP_API blowup_status blowup_F0_closed(double eps, int n, double T_c, double nondeg,
                                          double* out);
BLOWUP_API blowup_status blowup_F0_quadrature(double eps, int n, double T_c, double nondeg,
                                              double* out, int* converged);
/* Smallest eigenvalue of the xi-Hessian at (0, eps); W must live in R^{n-1}. */
BLOWUP_API blowup_status blowup_hessian_min_eigenvalue(double eps, int n, double T_c,
                                                       const blowup_weyl* W, double* out);

/* ---- bubble ----------------------------------------------------------- */

/* u at x (n entries) with center xi (n-1 entries). */
BLOWUP_API blowup_status blowup_bubble_eval(int n, double T_c, const double* xi, double eps,
                                            const double* x, double* out);
BLOWUP_API blowup_status blowup_bubble_residuals(int n, double T_c, const double* xi,
                                                 double eps, const double* x,
                                                 double* interior, double* boundary,
                                                 double* einstein);

/* ---- warped-product example -------------------------------------------- */

BLOWUP_API blowup_status blowup_bubble_total_energy(double R_g, double h_g, int n, double* out);
/* Threshold for the reference warped product; *found = 0 when none exists. */
BLOWUP_API blowup_status blowup_threshold_k(double* k, int* found);

#ifdef __cplusplus
}
#endif

#endif
