#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blowup::reports {

enum class Format { csv, json };

/// Parsed command-line state shared by every subcommand. Unset optionals
/// select the subcommand's defaults.
struct RunConfig {
  std::optional<int> n_lo;
  std::optional<int> n_hi;
  std::vector<double> tc;
  std::uint64_t seed = 1;
  std::optional<double> rel_tol;  // overrides the pass threshold
  std::vector<double> eps;
  std::optional<int> m;
  std::optional<double> r;
  int threads = 0;
  Format format = Format::csv;
};

struct Report {
  std::string text;     // CSV or JSON body
  std::string summary;  // one human-readable line
  bool passed = false;
};

/// Each throws Error{config} when the configuration violates a precondition.
Report run_scan(const RunConfig& cfg);
Report run_cq(const RunConfig& cfg);
Report run_energy_profile(const RunConfig& cfg);
Report run_hessian(const RunConfig& cfg);
Report run_moments(const RunConfig& cfg);
Report run_bubble_check(const RunConfig& cfg);
Report run_nonuniq(const RunConfig& cfg);

/// Parses "a:b:step" into an inclusive grid (step rounding tolerant).
std::vector<double> parse_grid(const std::string& text);
/// Parses "a..b" or "a".
std::pair<int, int> parse_range(const std::string& text);
/// Parses a comma separated list of reals.
std::vector<double> parse_list(const std::string& text);

}  // namespace blowup::reports
