#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lfe/calibration.hpp"

namespace lfe {

struct RunConfig {
  std::string command = "approx";  // partition | approx | calibrate | bench
  std::string curve = "smooth";    // smooth | rough | file:PATH
  int K = 20;
  double T = 4.0;
  double gamma = 1.2;
  int N = 10;
  int refine = 5;
  double eps_rel = 1e-12;
  bool cover = false;
  int cover_degree = 3;
  double cover_delta0 = 0.0;  // 0 selects 1e-3 of the box diagonal
  std::string func = "sinxy";
  std::string out = "out";
  int threads = 0;  // 0 selects the available cores
  std::uint64_t seed = 1;
  int repeats = 3;
};

/// Sets one key (the long flag name without dashes, e.g. "eps-rel") from its text value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value text; '#' starts a comment, blank lines are ignored.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Effective configuration as key=value lines.
std::string echo_config(const RunConfig& cfg);

ParametricCurve curve_from_spec(const std::string& spec);
SolverConfig solver_config(const RunConfig& cfg);

/// Settings of the T_min sweep (fixed N) and the N-threshold sweep (fixed gamma).
struct CalibrationProtocol {
  CalibrationSetup setup{};
  int tmin_N = 40;
  double tmin_target = 1e-12;
  double tmin_step = 0.1;
  double nthr_gamma = 4.0;
  double nthr_target = 3e-13;
};

/// Runs one subcommand, writes its artifacts to cfg.out and a summary to `log`.
/// Returns the process exit status; library errors are mapped to their exit codes.
int run_experiment(const RunConfig& cfg, std::ostream& log);

}  // namespace lfe
