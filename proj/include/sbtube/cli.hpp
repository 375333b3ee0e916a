#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbtube/numerics.hpp"
#include "sbtube/spectral_profile.hpp"

namespace sbtube::cli {

// Exit-code contract shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailure = 2;
inline constexpr int kExitNumericalFailure = 3;

struct RunConfig {
  std::string space = "h3";
  double t = 0.5;
  std::string profile = "heat:0.3";
  bool profile_explicit = false;
  std::optional<double> R_min, R_max, R_step;
  std::vector<double> R_grid;  // explicit grid wins over min/max/step
  std::vector<std::string> routes;  // empty: all routes
  std::string out;
  QuadratureSpec quad;
  bool timestamps = false;
  double xi_min = 0.5, xi_max = 15.0, xi_step = 0.5;
  std::optional<double> s_min, s_max, s_step;
};

// key = value lines, '#' comments. Unknown keys and malformed values raise
// ConfigError naming the offending line and key.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value, const std::string& where);

SpectralProfile make_profile(const std::string& spec);
std::vector<double> resolve_r_grid(const RunConfig& cfg, double fallback_end);

int cmd_isometry_curve(const RunConfig& cfg, std::ostream& log);
int cmd_inversion_curve(const RunConfig& cfg, std::ostream& log);
int cmd_cancellation_demo(const RunConfig& cfg, std::ostream& log);
int cmd_kos_compare(const RunConfig& cfg, std::ostream& log);
int cmd_euclid_baseline(const RunConfig& cfg, std::ostream& log);
int cmd_impossibility(const RunConfig& cfg, std::ostream& log);
int cmd_selftest(std::ostream& log);

// Full argv interface used by the binary; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& log);

}  // namespace sbtube::cli
