#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lfe/geometry.hpp"

namespace lfe {

enum class PatchType { Rect = 0, Left = 1, Right = 2, Top = 3, Bottom = 4 };

const char* to_string(PatchType t);
PatchType patch_type_from_string(const std::string& s);

/// b_c(s) = p_d(s) + delta in the canonical (top-type) orientation of a patch.
struct SmoothCover {
  int degree = 3;
  double center = 0.0;
  double half_width = 1.0;
  std::vector<double> coeffs;  // monomials in u = (s - center) / half_width
  double delta = 0.0;

  double fit(double s) const;
  double operator()(double s) const { return fit(s) + delta; }
};

/// One computational patch. For curved types the straight axis is x (Top, Bottom) or
/// y (Left, Right); `side` is the physical curved side over [s0, s1] and `base` the
/// opposite straight side.
struct PatchRecord {
  PatchType type = PatchType::Rect;
  double xL = 0.0, xR = 0.0, yB = 0.0, yT = 0.0;  // bounding box
  double s0 = 0.0, s1 = 0.0;
  double base = 0.0;
  std::function<double(double)> side;
  double cell_h = 0.0;  // transverse background cell size; fine nodes sit at base + k cell_h/(m-1)
  int cell_i = -1, cell_j = -1;
  int arc = -1;
  bool corner_cover = false;
  std::optional<SmoothCover> cover;

  bool curved() const { return type != PatchType::Rect; }
  /// +1 when the canonical height equals the physical coordinate, -1 when it is negated.
  double orientation_sign() const { return (type == PatchType::Bottom || type == PatchType::Left) ? -1.0 : 1.0; }
  /// Canonical curve height b(s) = sign * side(s) and base = sign * base.
  double canonical_height(double s) const { return orientation_sign() * side(s); }
  double canonical_base() const { return orientation_sign() * base; }
  /// Canonical (straight, transverse) -> physical point.
  Point to_physical(double s, double h) const;
  /// Physical point -> canonical (straight, transverse).
  Point to_canonical(Point p) const;
};

PatchRecord make_rect_patch(const Box& box);
/// A top-type patch {s0 <= x <= s1, base <= y <= b(x)}.
PatchRecord make_top_patch(double s0, double s1, double base, std::function<double(double)> b, double cell_h);

struct PatchCounts {
  std::array<int, 5> by_type{};  // indexed by PatchType
  int corner_covers = 0;
  int total = 0;
};

struct PatchDatabase {
  std::vector<PatchRecord> patches;
  GridSpec grid;
  ParametricCurve curve;
  int arcs = 0;

  PatchCounts counts() const;
};

enum class CellClass { Exterior = 0, Boundary = 1, Interior = 2 };

struct CellClassMatrix {
  int Kx = 0, Ky = 0;
  std::vector<CellClass> cls;  // row-major, index j * Kx + i for cell [x_i, x_{i+1}] x [y_j, y_{j+1}]
  CellClass at(int i, int j) const { return cls[static_cast<size_t>(j) * Kx + i]; }
  int count(CellClass c) const;
};

CellClassMatrix classify_cells(const ParametricCurve& curve, const GridSpec& grid);
CellClassMatrix classify_cells(const ParametricCurve& curve, const GridSpec& grid, const LineIntersections& li);

struct PartitionOptions {
  int extension = 1;            // background cells added on the interior side of a boundary patch
  double sliver = 0.1;          // partial patches narrower than this fraction of a cell are merged
  double min_arc_cells = 1.0;   // typed arcs shorter than this many cells are merged when valid
};

/// Scan-based partition. Throws PartitionFailure naming the offending cell.
PatchDatabase scan_partition(const ParametricCurve& curve, const GridSpec& grid, const PartitionOptions& opt = {});

enum class Axis { X, Y };

/// Splits a patch at `coord` along its straight axis (Rect: the given axis).
std::pair<PatchRecord, PatchRecord> subdivide(const PatchRecord& patch, Axis axis, double coord);

/// Cubic-style envelope from boundary samples (s_i, side(s_i)) given in physical orientation.
SmoothCover build_smooth_cover(const PatchRecord& patch, const std::vector<std::pair<double, double>>& samples,
                               int degree, double delta0);
/// Samples the curved side of every boundary patch and attaches its smooth cover.
void attach_smooth_covers(PatchDatabase& db, int degree, double delta0, int samples_per_patch = 400);

/// Membership with tolerance `tol` (physical units).
bool patch_contains(const PatchRecord& patch, Point p, double tol);

struct CoverageReport {
  long checked = 0;
  long covered = 0;
  long uncovered = 0;  // inside the domain but in no patch
  Point first_uncovered;
};

/// Checks every inside point of a uniform grid with `per_cell` intervals per background cell.
CoverageReport check_coverage(const PatchDatabase& db, int per_cell);

/// One row per patch: index,type,xL,xR,yB,yT,corner_cover,smooth_cover,cell_i,cell_j.
void write_partition_csv(const PatchDatabase& db, std::ostream& out);

}  // namespace lfe
