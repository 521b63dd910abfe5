#include "lfe/calibration.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lfe/assembly.hpp"
#include "lfe/errors.hpp"

namespace lfe {

namespace {

struct AxisFit {
  ComplexVector approx;
  ComplexVector exact;
};

// 1D approximant of exp(i omega x) on [0,1], evaluated on the refined node set.
AxisFit axis_fit(const Fe1dParams& p, double omega, int refine) {
  const Fe1dOperator op = build_uniform_operator(p);
  const double L = p.period_fraction();
  ComplexVector v(op.m());
  for (int k = 0; k < op.m(); ++k) v(k) = std::polar(1.0, omega * op.nodes(k) / L);
  const RealVector fine = uniform_nodes(refine * (op.m() - 1) + 1, p.T);
  AxisFit a;
  a.approx = eval_series(solve_coeffs(op, v), p.T, fine);
  a.exact.resize(fine.size());
  for (Eigen::Index k = 0; k < fine.size(); ++k) a.exact(k) = std::polar(1.0, omega * fine(k) / L);
  return a;
}

}  // namespace

double separable_rect_error(const Fe1dParams& px, const Fe1dParams& py, double omega_x, double omega_y, int refine) {
  if (refine < 1) throw Error(ErrorKind::InvalidInput, "calibration: refinement factor must be >= 1");
  const AxisFit ax = axis_fit(px, omega_x, refine);
  const AxisFit ay = axis_fit(py, omega_y, refine);
  double err = 0.0;
  for (Eigen::Index j = 0; j < ay.approx.size(); ++j)
    for (Eigen::Index i = 0; i < ax.approx.size(); ++i)
      err = std::max(err, std::abs(ax.approx(i) * ay.approx(j) - ax.exact(i) * ay.exact(j)));
  if (!std::isfinite(err)) throw Error(ErrorKind::NumericFailure, "calibration: non-finite error");
  return err;
}

SweepResult find_Tmin(double gamma, int N, double target, double step, const CalibrationSetup& setup) {
  if (!(step > 0.0 && step <= 0.1)) throw Error(ErrorKind::InvalidInput, "find_Tmin: step must be in (0, 0.1]");
  SweepResult r;
  int run = 0;
  for (int k = 0;; ++k) {
    const double T = 1.05 + k * step;
    if (T > 8.0 + 1e-12) break;
    const Fe1dParams px{T, N, gamma, setup.eps_rel};
    const double e = separable_rect_error(px, setup.transverse, setup.omega_x, setup.omega_y, setup.refine);
    r.points.push_back({T, N, gamma, e});
    run = e < target ? run + 1 : 0;
    if (run == 3) {
      r.found = true;
      r.T_min = r.points[r.points.size() - 3].T;
      return r;
    }
  }
  throw Error(ErrorKind::NumericFailure, "find_Tmin: no admissible T in (1, 8]");
}

SweepResult find_Nthreshold(double T, double gamma, double target, const CalibrationSetup& setup, int N_max) {
  SweepResult r;
  bool prev = false;
  for (int N = 1; N <= N_max + 1; ++N) {
    const Fe1dParams px{T, N, gamma, setup.eps_rel};
    const double e = separable_rect_error(px, setup.transverse, setup.omega_x, setup.omega_y, setup.refine);
    r.points.push_back({T, N, gamma, e});
    const bool ok = e < target;
    if (ok && prev) {
      r.found = true;
      r.N_threshold = N - 1;
      return r;
    }
    prev = ok;
  }
  throw Error(ErrorKind::NumericFailure, "find_Nthreshold: target not reached by N = " + std::to_string(N_max));
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
  out << "T,N,gamma,max_error\n";
  char buf[128];
  for (const auto& p : r.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g\n", p.T, p.N, p.gamma, p.error);
    out << buf;
  }
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ScalingResult bench_scaling(const ParametricCurve& curve, const std::vector<int>& Ks, const SolverConfig& cfg,
                            const Oracle& f, int repeats) {
  if (Ks.size() < 3 || !std::is_sorted(Ks.begin(), Ks.end()))
    throw Error(ErrorKind::InvalidInput, "bench_scaling: need at least three ascending K values");
  if (repeats < 1) throw Error(ErrorKind::InvalidInput, "bench_scaling: repeats must be >= 1");
  const SolverContext ctx(cfg);
  const Box box = default_box(curve);
  const double diag = std::hypot(box.b - box.a, box.d - box.c);
  auto run_once = [&](int K, TimingRecord& rec) {
    const auto t0 = std::chrono::steady_clock::now();
    PatchDatabase db = scan_partition(curve, GridSpec{box, K, K});
    if (cfg.cover.enabled)
      attach_smooth_covers(db, cfg.cover.degree, cfg.cover.delta0 > 0 ? cfg.cover.delta0 : 1e-3 * diag);
    const double build = seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const auto outputs = solve_all(f, db, ctx, 1);
    const PointCloud cloud = assemble(outputs, 0.5 * fine_spacing(db.grid, ctx));
    const double solve = seconds_since(t1);
    rec.patches = static_cast<int>(db.patches.size());
    rec.points = static_cast<long>(cloud.size());
    return std::array<double, 3>{build, solve, seconds_since(t0)};
  };
  // One untimed pass warms caches and the allocator; repeats then cycle through all K so slow
  // drift of the machine affects every K alike.
  TimingRecord scratch;
  run_once(Ks.front(), scratch);
  ScalingResult res;
  res.records.resize(Ks.size());
  std::vector<std::array<std::vector<double>, 3>> times(Ks.size());
  for (int rep = 0; rep < repeats; ++rep) {
    for (size_t k = 0; k < Ks.size(); ++k) {
      res.records[k].K = Ks[k];
      const auto t = run_once(Ks[k], res.records[k]);
      for (int c = 0; c < 3; ++c) times[k][c].push_back(t[c]);
    }
  }
  for (size_t k = 0; k < Ks.size(); ++k) {
    res.records[k].build_s = median(times[k][0]);
    res.records[k].solve_s = median(times[k][1]);
    res.records[k].total_s = median(times[k][2]);
  }
  res.linearity = 1.0;
  for (size_t k = 1; k < res.records.size(); ++k) {
    const auto& a = res.records[k - 1];
    const auto& b = res.records[k];
    const double ratio = (b.solve_s / b.points) / (a.solve_s / a.points);
    res.linearity = std::max(res.linearity, std::max(ratio, 1.0 / ratio));
  }
  return res;
}

void write_timing_csv(const ScalingResult& r, std::ostream& out) {
  out << "K,N_p,points,build_s,solve_s,total_s\n";
  char buf[160];
  for (const auto& t : r.records) {
    std::snprintf(buf, sizeof buf, "%d,%d,%ld,%.6g,%.6g,%.6g\n", t.K, t.patches, t.points, t.build_s, t.solve_s,
                  t.total_s);
    out << buf;
  }
}

}  // namespace lfe
