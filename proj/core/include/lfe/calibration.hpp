#pragma once

#include <iosfwd>
#include <vector>

#include "lfe/solvers.hpp"

namespace lfe {

/// Settings of the rectangular calibration patch [0,1]^2 and the test function
/// F(x,y) = exp(i wx x) exp(i wy y).
struct CalibrationSetup {
  double omega_x = 1.0;
  double omega_y = 1.0;
  double eps_rel = 1e-13;
  int refine = 5;
  /// Transverse (y) operator, held fixed while the x parameters are scanned.
  Fe1dParams transverse{4.0, 20, 4.0, 1e-13};
};

/// Max error of the tensor approximant of the separable test function on the refined grid.
/// For separable data the 2D solve factorizes into one 1D solve per axis.
double separable_rect_error(const Fe1dParams& px, const Fe1dParams& py, double omega_x, double omega_y, int refine);

struct SweepPoint {
  double T = 0.0;
  int N = 0;
  double gamma = 0.0;
  double error = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  bool found = false;
  double T_min = 0.0;
  int N_threshold = 0;
};

/// Smallest T = 1.05 + k step whose error is below target with the next two steps also below.
/// Throws NumericFailure when no admissible T exists in (1, 8].
SweepResult find_Tmin(double gamma, int N, double target, double step, const CalibrationSetup& setup);

/// Smallest N with N and N+1 both below target. Throws NumericFailure beyond N_max.
SweepResult find_Nthreshold(double T, double gamma, double target, const CalibrationSetup& setup, int N_max = 80);

void write_sweep_csv(const SweepResult& r, std::ostream& out);

struct TimingRecord {
  int K = 0;
  int patches = 0;
  long points = 0;
  double build_s = 0.0;
  double solve_s = 0.0;
  double total_s = 0.0;
};

struct ScalingResult {
  std::vector<TimingRecord> records;
  /// Max over consecutive K of the per-point solve time ratio (>= 1).
  double linearity = 0.0;
};

/// Build = partition (and covers); solve = patch solves plus assembly. Times are medians.
ScalingResult bench_scaling(const ParametricCurve& curve, const std::vector<int>& Ks, const SolverConfig& cfg,
                            const Oracle& f, int repeats);

void write_timing_csv(const ScalingResult& r, std::ostream& out);

}  // namespace lfe
