// Command-line front end. Talks to the library only through blowup/blowup.h.
//
// Exit codes: 0 all in-run checks hold, 1 a verification failed, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blowup/blowup.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string n;
  std::string tc;
  std::uint64_t seed = 1;
  std::optional<double> rel_tol;
  std::string out;
  std::string format = "csv";
  std::string eps;
  std::optional<int> m;
  std::optional<double> r;
  int threads = 0;
};

struct ConfigError {
  std::string message;
};

std::vector<double> doubles(blowup_status (*parse)(const char*, double**, size_t*),
                            const std::string& text) {
  double* values = nullptr;
  size_t count = 0;
  if (parse(text.c_str(), &values, &count) != BLOWUP_OK) throw ConfigError{blowup_last_error()};
  std::vector<double> v(values, values + count);
  blowup_free_doubles(values);
  return v;
}

int run(blowup_command cmd, const Options& o) {
  blowup_run_config cfg;
  blowup_run_config_init(&cfg);
  std::vector<double> tc, eps;
  if (!o.n.empty()) {
    if (blowup_parse_range(o.n.c_str(), &cfg.n_lo, &cfg.n_hi) != BLOWUP_OK)
      throw ConfigError{blowup_last_error()};
    cfg.has_n = 1;
  }
  if (!o.tc.empty()) tc = doubles(blowup_parse_list, o.tc);
  if (!o.eps.empty())
    eps = o.eps.find(':') != std::string::npos ? doubles(blowup_parse_grid, o.eps)
                                               : doubles(blowup_parse_list, o.eps);
  cfg.tc = tc.data();
  cfg.tc_count = tc.size();
  cfg.eps = eps.data();
  cfg.eps_count = eps.size();
  cfg.seed = o.seed;
  if (o.rel_tol) {
    cfg.has_rel_tol = 1;
    cfg.rel_tol = *o.rel_tol;
  }
  if (o.m) {
    cfg.has_m = 1;
    cfg.m = *o.m;
  }
  if (o.r) {
    cfg.has_r = 1;
    cfg.r = *o.r;
  }
  cfg.threads = o.threads;
  cfg.format = o.format == "json" ? BLOWUP_FORMAT_JSON : BLOWUP_FORMAT_CSV;

  blowup_report* rep = nullptr;
  const blowup_status s = blowup_run(cmd, &cfg, &rep);
  if (s == BLOWUP_ERR_CONFIG || s == BLOWUP_ERR_INVALID_ARGUMENT || s == BLOWUP_ERR_DOMAIN ||
      s == BLOWUP_ERR_DIVERGENT_MOMENT || s == BLOWUP_ERR_DEGENERATE_DIMENSION)
    throw ConfigError{blowup_last_error()};
  if (s != BLOWUP_OK) {
    std::cerr << "error (" << blowup_status_name(s) << "): " << blowup_last_error() << '\n';
    return kExitFail;
  }
  const std::string text = blowup_report_text(rep);
  const bool passed = blowup_report_passed(rep) != 0;
  std::cerr << blowup_report_summary(rep) << '\n';
  blowup_report_free(rep);

  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << text;
    if (!f) throw ConfigError{"cannot write " + o.out};
  }
  return passed ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the blow-up construction"};
  app.require_subcommand(1);

  const std::map<std::string, blowup_command> commands{
      {"scan", BLOWUP_CMD_SCAN},
      {"cq", BLOWUP_CMD_CQ},
      {"energy-profile", BLOWUP_CMD_ENERGY_PROFILE},
      {"hessian", BLOWUP_CMD_HESSIAN},
      {"moments", BLOWUP_CMD_MOMENTS},
      {"bubble-check", BLOWUP_CMD_BUBBLE_CHECK},
      {"nonuniq", BLOWUP_CMD_NONUNIQ},
  };
  const std::map<std::string, std::string> help{
      {"scan", "dimension scan with exact bound certificates"},
      {"cq", "moments c_q: closed route against quadrature"},
      {"energy-profile", "reduced energy F(0, eps): closed form against quadrature"},
      {"hessian", "xi-Hessian at (0, eps) and its radial integrals"},
      {"moments", "sphere moment identities against exact monomial moments"},
      {"bubble-check", "bubble equation residuals and kernel norms"},
      {"nonuniq", "warped-product example: volumes, energies, threshold k"},
  };

  Options o;
  std::string selected;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--n,--n-range", o.n, "dimension N or range A..B");
    sub->add_option("--tc", o.tc, "comma separated T_c values (negative)");
    sub->add_option("--seed", o.seed, "seed for random tensors and sample points");
    sub->add_option("--rel-tol", o.rel_tol, "override the pass tolerance");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker threads (0: automatic)")
        ->check(CLI::NonNegativeNumber);
    if (name == "energy-profile" || name == "hessian")
      sub->add_option("--eps", o.eps, "eps grid a:b:step or comma list");
    if (name == "moments") {
      sub->add_option("--m", o.m, "tangential dimension");
      sub->add_option("--r", o.r, "sphere radius");
    }
    sub->callback([&selected, name = name] { selected = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return run(commands.at(selected), o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.message << '\n';
    return kExitConfig;
  }
}
