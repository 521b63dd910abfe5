#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lfe/fe2d.hpp"
#include "lfe/partition.hpp"

namespace lfe {

using Oracle = std::function<cplx(double, double)>;

enum class SamplingMode { GridPlusIntersection, UniformOnSegment };

struct CoverSettings {
  bool enabled = false;
  int degree = 3;
  double delta0 = 0.0;  // 0 selects 1e-3 of the background box diagonal
};

struct SolverConfig {
  Fe1dParams fx{};
  Fe1dParams fy{};
  int refine = 5;
  SamplingMode sampling = SamplingMode::GridPlusIntersection;
  CoverSettings cover{};
  int n_min = 8;

  void validate() const;
};

/// Reference operators shared by all patches.
struct SolverContext {
  SolverConfig cfg;
  Fe1dOperator op_x;
  Fe1dOperator op_y;
  RealVector fine_x;  // refined evaluation nodes in [0, 2pi/T_x]
  RealVector fine_y;

  explicit SolverContext(const SolverConfig& c);
};

/// Refined-grid output of one patch. Points are stored row-major with y (or the canonical
/// transverse coordinate) outer.
struct PatchOutput {
  int patch = -1;
  int nx = 0, ny = 0;
  std::vector<Point> points;
  ComplexVector values;
  std::vector<char> mask;  // 1 where the point belongs to the physical patch
  bool fallback = false;   // cover requested but the direct solver was used
  std::string warning;
};

PatchOutput solve_rect(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx);

/// Canonical transverse source nodes on a column of height [base, top].
RealVector column_source_nodes(const PatchRecord& patch, double top, const SolverContext& ctx);

/// Values of f at the m_y uniform targets of the column at straight coordinate s.
ComplexVector transfer_column(const Oracle& f, const PatchRecord& patch, double s, const SolverContext& ctx);

PatchOutput solve_curved(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx);

/// Smooth-cover solver; requires patch.cover. Falls back to solve_curved when the column
/// completion is impossible.
PatchOutput solve_covered(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx);

/// Dispatch by patch type and cover settings.
PatchOutput solve_patch(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx);

/// Solves all patches, in parallel when threads > 1; output order follows the database.
std::vector<PatchOutput> solve_all(const Oracle& f, const PatchDatabase& db, const SolverContext& ctx, int threads);

/// Fine spacing of the refined output grid on a background cell.
double fine_spacing(const GridSpec& grid, const SolverContext& ctx);

}  // namespace lfe
