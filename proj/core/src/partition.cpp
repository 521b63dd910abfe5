#include "lfe/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "lfe/errors.hpp"

namespace lfe {

const char* to_string(PatchType t) {
  switch (t) {
    case PatchType::Rect: return "rect";
    case PatchType::Left: return "L";
    case PatchType::Right: return "R";
    case PatchType::Top: return "T";
    case PatchType::Bottom: return "B";
  }
  return "?";
}

PatchType patch_type_from_string(const std::string& s) {
  if (s == "rect") return PatchType::Rect;
  if (s == "L") return PatchType::Left;
  if (s == "R") return PatchType::Right;
  if (s == "T") return PatchType::Top;
  if (s == "B") return PatchType::Bottom;
  throw Error(ErrorKind::InvalidInput, "unknown patch type: " + s);
}

double SmoothCover::fit(double s) const {
  const double u = (s - center) / half_width;
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * u + *it;
  return v;
}

Point PatchRecord::to_physical(double s, double h) const {
  switch (type) {
    case PatchType::Bottom: return {s, -h};
    case PatchType::Right: return {h, s};
    case PatchType::Left: return {-h, s};
    default: return {s, h};
  }
}

Point PatchRecord::to_canonical(Point p) const {
  switch (type) {
    case PatchType::Bottom: return {p.x, -p.y};
    case PatchType::Right: return {p.y, p.x};
    case PatchType::Left: return {p.y, -p.x};
    default: return p;
  }
}

PatchRecord make_rect_patch(const Box& box) {
  PatchRecord r;
  r.type = PatchType::Rect;
  r.xL = box.a;
  r.xR = box.b;
  r.yB = box.c;
  r.yT = box.d;
  r.s0 = box.a;
  r.s1 = box.b;
  r.base = box.c;
  const double top = box.d;
  r.side = [top](double) { return top; };
  r.cell_h = box.d - box.c;
  return r;
}

PatchRecord make_top_patch(double s0, double s1, double base, std::function<double(double)> b, double cell_h) {
  if (!(s1 > s0)) throw Error(ErrorKind::InvalidInput, "patch: empty range");
  PatchRecord r;
  r.type = PatchType::Top;
  r.s0 = s0;
  r.s1 = s1;
  r.base = base;
  r.side = std::move(b);
  r.cell_h = cell_h;
  double hi = -1e300;
  for (int k = 0; k <= 256; ++k) hi = std::max(hi, r.side(s0 + (s1 - s0) * k / 256.0));
  r.xL = s0;
  r.xR = s1;
  r.yB = base;
  r.yT = hi;
  return r;
}

PatchCounts PatchDatabase::counts() const {
  PatchCounts c;
  for (const auto& p : patches) {
    ++c.by_type[static_cast<int>(p.type)];
    if (p.corner_cover) ++c.corner_covers;
  }
  c.total = static_cast<int>(patches.size());
  return c;
}

int CellClassMatrix::count(CellClass c) const { return static_cast<int>(std::count(cls.begin(), cls.end(), c)); }

CellClassMatrix classify_cells(const ParametricCurve& curve, const GridSpec& grid) {
  return classify_cells(curve, grid, line_intersections(curve, grid));
}

CellClassMatrix classify_cells(const ParametricCurve& curve, const GridSpec& grid, const LineIntersections& li) {
  grid.validate();
  CellClassMatrix M;
  M.Kx = grid.Kx;
  M.Ky = grid.Ky;
  std::vector<char> inside(static_cast<size_t>(grid.Kx + 1) * (grid.Ky + 1));
  for (int j = 0; j <= grid.Ky; ++j)
    for (int i = 0; i <= grid.Kx; ++i)
      inside[static_cast<size_t>(j) * (grid.Kx + 1) + i] = point_in_domain(curve, {grid.x(i), grid.y(j)});
  std::vector<char> touched(static_cast<size_t>(grid.Kx) * grid.Ky, 0);
  auto mark = [&](int i, int j) {
    if (i >= 0 && i < grid.Kx && j >= 0 && j < grid.Ky) touched[static_cast<size_t>(j) * grid.Kx + i] = 1;
  };
  for (int i = 0; i <= grid.Kx; ++i)
    for (const auto& s : li.vertical[i]) {
      const int j = std::clamp(static_cast<int>(std::floor((s.coord - grid.box.c) / grid.hy())), 0, grid.Ky - 1);
      mark(i - 1, j);
      mark(i, j);
    }
  for (int j = 0; j <= grid.Ky; ++j)
    for (const auto& s : li.horizontal[j]) {
      const int i = std::clamp(static_cast<int>(std::floor((s.coord - grid.box.a) / grid.hx())), 0, grid.Kx - 1);
      mark(i, j - 1);
      mark(i, j);
    }
  M.cls.resize(static_cast<size_t>(grid.Kx) * grid.Ky);
  for (int j = 0; j < grid.Ky; ++j)
    for (int i = 0; i < grid.Kx; ++i) {
      auto in = [&](int a, int b) { return inside[static_cast<size_t>(b) * (grid.Kx + 1) + a] != 0; };
      const int n_in = in(i, j) + in(i + 1, j) + in(i, j + 1) + in(i + 1, j + 1);
      CellClass c;
      if (touched[static_cast<size_t>(j) * grid.Kx + i] || (n_in != 0 && n_in != 4))
        c = CellClass::Boundary;
      else
        c = n_in == 4 ? CellClass::Interior : CellClass::Exterior;
      M.cls[static_cast<size_t>(j) * grid.Kx + i] = c;
    }
  return M;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Graph of one monotone arc over its straight axis.
struct ArcGraph {
  ParametricCurve curve;
  bool over_x = true;
  int kA = 0, kB = 0;  // sample range, kB > kA, indices taken mod n

  double param(int k) const { return kTwoPi * k / curve.samples(); }
  double along(Point p) const { return over_x ? p.x : p.y; }
  double across(Point p) const { return over_x ? p.y : p.x; }
  Point sample(int k) const {
    const int n = curve.samples();
    return curve.polyline()[((k % n) + n) % n];
  }

  double operator()(double s) const {
    const bool inc = along(sample(kB)) > along(sample(kA));
    auto key = [&](int k) { return inc ? along(sample(k)) : -along(sample(k)); };
    const double ks = inc ? s : -s;
    if (ks <= key(kA)) return across(sample(kA));
    if (ks >= key(kB)) return across(sample(kB));
    int lo = kA, hi = kB;
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (key(mid) <= ks)
        lo = mid;
      else
        hi = mid;
    }
    const double t = refine_crossing(curve, over_x ? LineAxis::Vertical : LineAxis::Horizontal, s, param(lo),
                                     param(hi));
    return across(curve(t));
  }
};

struct Run {
  PatchType type;
  int kA, kB;
  double len;
  bool fixed = false;
};

PatchType preferred(Point d) {
  if (std::abs(d.x) >= std::abs(d.y)) return d.x < 0.0 ? PatchType::Top : PatchType::Bottom;
  return d.y > 0.0 ? PatchType::Right : PatchType::Left;
}

bool valid_for(PatchType t, Point d) {
  switch (t) {
    case PatchType::Top: return d.x < 0.0;
    case PatchType::Bottom: return d.x > 0.0;
    case PatchType::Right: return d.y > 0.0;
    case PatchType::Left: return d.y < 0.0;
    default: return false;
  }
}

std::vector<Run> typed_arcs(const ParametricCurve& curve, double min_len) {
  const int n = curve.samples();
  const auto& pts = curve.polyline();
  std::vector<Point> der(n);
  std::vector<PatchType> pref(n);
  for (int k = 0; k < n; ++k) {
    der[k] = curve.derivative(curve.param(k));
    pref[k] = preferred(der[k]);
  }
  int k0 = -1;
  for (int k = 0; k < n; ++k)
    if (pref[k] != pref[(k + n - 1) % n]) {
      k0 = k;
      break;
    }
  if (k0 < 0) throw Error(ErrorKind::PartitionFailure, "partition: curve has a single tangent class");
  auto seglen = [&](int k) {
    const Point& a = pts[k % n];
    const Point& b = pts[(k + 1) % n];
    return std::hypot(b.x - a.x, b.y - a.y);
  };
  std::vector<Run> runs;
  for (int k = k0; k < k0 + n; ++k) {
    if (runs.empty() || runs.back().type != pref[k % n]) runs.push_back({pref[k % n], k, k, 0.0});
    runs.back().kB = k + 1;
    runs.back().len += seglen(k);
  }
  auto valid_over = [&](PatchType t, const Run& r) {
    for (int k = r.kA; k < r.kB; ++k)
      if (!valid_for(t, der[k % n])) return false;
    return true;
  };
  for (;;) {
    const int R = static_cast<int>(runs.size());
    if (R <= 4) break;
    int idx = -1;
    for (int r = 0; r < R; ++r)
      if (!runs[r].fixed && runs[r].len < min_len && (idx < 0 || runs[r].len < runs[idx].len)) idx = r;
    if (idx < 0) break;
    const int prev = (idx + R - 1) % R, next = (idx + 1) % R;
    const bool vp = valid_over(runs[prev].type, runs[idx]);
    const bool vn = valid_over(runs[next].type, runs[idx]);
    if (!vp && !vn) {
      runs[idx].fixed = true;
      continue;
    }
    const bool into_prev = vp && (!vn || runs[prev].len >= runs[next].len);
    // Absorb idx into its neighbour; indices of the sample ranges stay contiguous along t.
    if (into_prev) {
      runs[prev].len += runs[idx].len;
      if (prev < idx) {
        runs[prev].kB = runs[idx].kB;
      } else {
        // prev is the last run and idx the first: shift idx's samples by a full period.
        runs[prev].kB = runs[idx].kB + n;
      }
    } else {
      runs[next].len += runs[idx].len;
      if (next > idx) {
        runs[next].kA = runs[idx].kA;
      } else {
        runs[next].kA = runs[idx].kA - n;
      }
    }
    runs.erase(runs.begin() + idx);
    // Merge neighbours that now share a type.
    for (bool merged = true; merged && runs.size() > 1;) {
      merged = false;
      const int Rn = static_cast<int>(runs.size());
      for (int r = 0; r < Rn; ++r) {
        const int s = (r + 1) % Rn;
        if (runs[r].type != runs[s].type || r == s) continue;
        runs[r].len += runs[s].len;
        runs[r].fixed = false;
        runs[r].kB = s > r ? runs[s].kB : runs[s].kB + n;
        runs.erase(runs.begin() + s);
        merged = true;
        break;
      }
    }
  }
  // Normalise so that kA lies in [0, n).
  for (auto& r : runs) {
    while (r.kA < 0) {
      r.kA += n;
      r.kB += n;
    }
    while (r.kA >= n) {
      r.kA -= n;
      r.kB -= n;
    }
  }
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.kA < b.kA; });
  return runs;
}

struct Piece {
  double s0, s1;
  int col;
};

struct Core {
  double a, b, c, d;
};

struct Builder {
  const ParametricCurve& curve;
  const GridSpec& grid;
  const PartitionOptions& opt;

  double h_along(bool over_x) const { return over_x ? grid.hx() : grid.hy(); }
  double h_across(bool over_x) const { return over_x ? grid.hy() : grid.hx(); }
  double origin_along(bool over_x) const { return over_x ? grid.box.a : grid.box.c; }
  double origin_across(bool over_x) const { return over_x ? grid.box.c : grid.box.a; }
  int K_across(bool over_x) const { return over_x ? grid.Ky : grid.Kx; }

  static bool interior_low(PatchType t) { return t == PatchType::Top || t == PatchType::Right; }

  // Range of the curved side over [s0, s1] from polyline samples plus the end values.
  std::pair<double, double> side_range(const ArcGraph& g, double s0, double s1) const {
    double lo = std::min(g(s0), g(s1)), hi = std::max(g(s0), g(s1));
    for (int k = g.kA; k <= g.kB; ++k) {
      const Point p = g.sample(k);
      const double u = g.along(p);
      if (u >= s0 && u <= s1) {
        lo = std::min(lo, g.across(p));
        hi = std::max(hi, g.across(p));
      }
    }
    return {lo, hi};
  }

  double base_for(PatchType t, bool over_x, double lo, double hi, int ext) const {
    const double o = origin_across(over_x), h = h_across(over_x);
    const int K = K_across(over_x);
    if (interior_low(t)) {
      int j = static_cast<int>(std::floor((lo - o) / h + 1e-12)) - ext;
      j = std::max(j, 0);
      return over_x ? grid.y(j) : grid.x(j);
    }
    int j = static_cast<int>(std::ceil((hi - o) / h - 1e-12)) + ext;
    j = std::min(j, K);
    return over_x ? grid.y(j) : grid.x(j);
  }

  // True when curve points outside the arc's own sample range enter the patch region.
  bool intruded(const PatchRecord& p, const ArcGraph& g) const {
    const int n = curve.samples();
    const auto& pts = curve.polyline();
    const double tol = 1e-12 * std::max(grid.hx(), grid.hy());
    for (int k : segments_in_box(curve, {p.xL - tol, p.xR + tol, p.yB - tol, p.yT + tol})) {
      // Own samples: kA-1 .. kB (mod n).
      const int rel = ((k - (g.kA - 1)) % n + n) % n;
      if (rel <= g.kB - g.kA + 1) continue;
      for (int e = 0; e < 2; ++e) {
        const Point q = pts[(k + e) % n];
        const Point c = p.to_canonical(q);
        if (c.x < p.s0 - tol || c.x > p.s1 + tol) continue;
        const double cb = p.canonical_base();
        if (c.y < cb - tol) continue;
        if (c.y <= p.canonical_height(c.x) + tol) return true;
      }
    }
    return false;
  }

  void set_bounds(PatchRecord& p, double lo, double hi) const {
    const bool over_x = p.type == PatchType::Top || p.type == PatchType::Bottom;
    const double t0 = interior_low(p.type) ? p.base : lo;
    const double t1 = interior_low(p.type) ? hi : p.base;
    if (over_x) {
      p.xL = p.s0;
      p.xR = p.s1;
      p.yB = t0;
      p.yT = t1;
    } else {
      p.yB = p.s0;
      p.yT = p.s1;
      p.xL = t0;
      p.xR = t1;
    }
  }

  Core core_of(const PatchRecord& p, double lo, double hi) const {
    switch (p.type) {
      case PatchType::Top: return {p.s0, p.s1, p.base, lo};
      case PatchType::Bottom: return {p.s0, p.s1, hi, p.base};
      case PatchType::Right: return {p.base, lo, p.s0, p.s1};
      case PatchType::Left: return {hi, p.base, p.s0, p.s1};
      default: return {p.xL, p.xR, p.yB, p.yT};
    }
  }
};

bool on_grid_line(double s, double origin, double h) {
  const double f = (s - origin) / h;
  return std::abs(f - std::round(f)) < 1e-9;
}

}  // namespace

PatchDatabase scan_partition(const ParametricCurve& curve, const GridSpec& grid, const PartitionOptions& opt) {
  grid.validate();
  const Box bb = curve.bounding_box();
  if (bb.a <= grid.box.a || bb.b >= grid.box.b || bb.c <= grid.box.c || bb.d >= grid.box.d)
    throw Error(ErrorKind::PartitionFailure, "partition: curve leaves the background box");

  PatchDatabase db;
  db.grid = grid;
  db.curve = curve;
  Builder B{curve, grid, opt};
  const double hmin = std::min(grid.hx(), grid.hy());
  const std::vector<Run> runs = typed_arcs(curve, opt.min_arc_cells * hmin);
  db.arcs = static_cast<int>(runs.size());

  std::vector<PatchRecord> boundary;
  std::vector<Core> cores;
  std::vector<std::pair<double, double>> ranges;  // side range per boundary patch
  std::vector<std::shared_ptr<ArcGraph>> graphs;
  std::vector<int> owner;                         // graph index per boundary patch

  for (int a = 0; a < static_cast<int>(runs.size()); ++a) {
    const Run& run = runs[a];
    const bool over_x = run.type == PatchType::Top || run.type == PatchType::Bottom;
    auto g = std::make_shared<ArcGraph>(ArcGraph{curve, over_x, run.kA, run.kB});
    graphs.push_back(g);
    const double uA = g->along(g->sample(run.kA)), uB = g->along(g->sample(run.kB));
    const double lo = std::min(uA, uB), hi = std::max(uA, uB);
    const double o = B.origin_along(over_x), h = B.h_along(over_x);
    const int K = over_x ? grid.Kx : grid.Ky;
    std::vector<Piece> pieces;
    const int c0 = std::clamp(static_cast<int>(std::floor((lo - o) / h)), 0, K - 1);
    const int c1 = std::clamp(static_cast<int>(std::ceil((hi - o) / h)) - 1, 0, K - 1);
    for (int c = c0; c <= c1; ++c) {
      const double e0 = over_x ? grid.x(c) : grid.y(c), e1 = over_x ? grid.x(c + 1) : grid.y(c + 1);
      const double s0 = std::max(lo, e0), s1 = std::min(hi, e1);
      if (s1 - s0 > 1e-10 * h) pieces.push_back({s0, s1, c});
    }
    // Merge slivers into their neighbour along the same arc.
    for (bool changed = true; changed && pieces.size() > 1;) {
      changed = false;
      for (size_t k = 0; k < pieces.size(); ++k) {
        if (pieces[k].s1 - pieces[k].s0 >= opt.sliver * h) continue;
        const size_t nb = k == 0 ? 1 : k - 1;
        pieces[nb].s0 = std::min(pieces[nb].s0, pieces[k].s0);
        pieces[nb].s1 = std::max(pieces[nb].s1, pieces[k].s1);
        pieces.erase(pieces.begin() + static_cast<long>(k));
        changed = true;
        break;
      }
    }
    if (uB < uA) std::reverse(pieces.begin(), pieces.end());

    for (const Piece& pc : pieces) {
      PatchRecord p;
      p.type = run.type;
      p.s0 = pc.s0;
      p.s1 = pc.s1;
      p.side = [g](double s) { return (*g)(s); };
      p.cell_h = B.h_across(over_x);
      p.arc = a;
      p.corner_cover = !on_grid_line(pc.s0, o, h) || !on_grid_line(pc.s1, o, h);
      const auto [rlo, rhi] = B.side_range(*g, pc.s0, pc.s1);
      const double mid_across = (*g)(0.5 * (pc.s0 + pc.s1));
      const int cross_idx = std::clamp(
          static_cast<int>(std::floor((mid_across - B.origin_across(over_x)) / B.h_across(over_x))), 0,
          B.K_across(over_x) - 1);
      p.cell_i = over_x ? pc.col : cross_idx;
      p.cell_j = over_x ? cross_idx : pc.col;
      bool ok = false;
      for (int ext = opt.extension; ext >= 0 && !ok; --ext) {
        p.base = B.base_for(p.type, over_x, rlo, rhi, ext);
        B.set_bounds(p, rlo, rhi);
        ok = !B.intruded(p, *g);
      }
      if (!ok) {
        std::ostringstream msg;
        msg << "partition: boundary patch in cell (" << p.cell_i << "," << p.cell_j
            << ") is crossed by another part of the curve; increase K";
        throw Error(ErrorKind::PartitionFailure, msg.str());
      }
      boundary.push_back(p);
      cores.push_back(B.core_of(p, rlo, rhi));
      ranges.emplace_back(rlo, rhi);
      owner.push_back(a);
    }
  }

  const CellClassMatrix cls = classify_cells(curve, grid);
  const double tol = 1e-12 * std::max(grid.hx(), grid.hy());
  auto covered = [&](int i, int j) {
    const double x0 = grid.x(i), x1 = grid.x(i + 1), y0 = grid.y(j), y1 = grid.y(j + 1);
    for (const Core& c : cores)
      if (c.a <= x0 + tol && c.b >= x1 - tol && c.c <= y0 + tol && c.d >= y1 - tol) return true;
    return false;
  };
  auto uncovered_interior = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= grid.Kx || j >= grid.Ky) return false;
    return cls.at(i, j) == CellClass::Interior && !covered(i, j);
  };
  // Try to stretch a boundary patch by one cell so that it absorbs cell (i, j).
  auto absorb = [&](int i, int j) {
    const double x0 = grid.x(i), x1 = grid.x(i + 1), y0 = grid.y(j), y1 = grid.y(j + 1);
    struct Want {
      PatchType type;
      double s0, s1, from, to;
    };
    const Want wants[] = {{PatchType::Top, x0, x1, y1, y0},
                          {PatchType::Bottom, x0, x1, y0, y1},
                          {PatchType::Right, y0, y1, x1, x0},
                          {PatchType::Left, y0, y1, x0, x1}};
    for (const Want& w : wants)
      for (size_t k = 0; k < boundary.size(); ++k) {
        PatchRecord& p = boundary[k];
        if (p.type != w.type || std::abs(p.s0 - w.s0) > tol || std::abs(p.s1 - w.s1) > tol ||
            std::abs(p.base - w.from) > tol)
          continue;
        PatchRecord trial = p;
        trial.base = w.to;
        B.set_bounds(trial, ranges[k].first, ranges[k].second);
        if (B.intruded(trial, *graphs[owner[k]])) continue;
        p = trial;
        cores[k] = B.core_of(p, ranges[k].first, ranges[k].second);
        return true;
      }
    return false;
  };
  for (int j = 0; j < grid.Ky; ++j)
    for (int i = 0; i < grid.Kx; ++i) {
      if (!uncovered_interior(i, j)) continue;
      const bool lone_v = !uncovered_interior(i, j - 1) && !uncovered_interior(i, j + 1);
      const bool lone_h = !uncovered_interior(i - 1, j) && !uncovered_interior(i + 1, j);
      if (lone_v || lone_h) absorb(i, j);
    }

  db.patches = std::move(boundary);
  for (int j = 0; j < grid.Ky; ++j)
    for (int i = 0; i < grid.Kx; ++i) {
      if (!uncovered_interior(i, j)) continue;
      PatchRecord r = make_rect_patch({grid.x(i), grid.x(i + 1), grid.y(j), grid.y(j + 1)});
      r.cell_i = i;
      r.cell_j = j;
      db.patches.push_back(r);
    }
  return db;
}

std::pair<PatchRecord, PatchRecord> subdivide(const PatchRecord& patch, Axis axis, double coord) {
  PatchRecord a = patch, b = patch;
  if (patch.type == PatchType::Rect) {
    const double lo = axis == Axis::X ? patch.xL : patch.yB, hi = axis == Axis::X ? patch.xR : patch.yT;
    if (!(coord > lo && coord < hi)) throw Error(ErrorKind::InvalidInput, "subdivide: coordinate outside the patch");
    if (axis == Axis::X) {
      a = make_rect_patch({patch.xL, coord, patch.yB, patch.yT});
      b = make_rect_patch({coord, patch.xR, patch.yB, patch.yT});
    } else {
      a = make_rect_patch({patch.xL, patch.xR, patch.yB, coord});
      b = make_rect_patch({patch.xL, patch.xR, coord, patch.yT});
    }
    for (PatchRecord* p : {&a, &b}) {
      p->cell_i = patch.cell_i;
      p->cell_j = patch.cell_j;
    }
    return {a, b};
  }
  const bool straight_x = patch.type == PatchType::Top || patch.type == PatchType::Bottom;
  if ((axis == Axis::X) != straight_x)
    throw Error(ErrorKind::InvalidInput, "subdivide: curved patches split along their straight axis only");
  if (!(coord > patch.s0 && coord < patch.s1)) throw Error(ErrorKind::InvalidInput, "subdivide: coordinate outside the patch");
  a.s1 = coord;
  b.s0 = coord;
  a.cover.reset();
  b.cover.reset();
  for (PatchRecord* p : {&a, &b}) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 256; ++k) {
      const double v = p->side(p->s0 + (p->s1 - p->s0) * k / 256.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool low = p->type == PatchType::Top || p->type == PatchType::Right;
    const double t0 = low ? p->base : lo, t1 = low ? hi : p->base;
    if (straight_x) {
      p->xL = p->s0;
      p->xR = p->s1;
      p->yB = t0;
      p->yT = t1;
    } else {
      p->yB = p->s0;
      p->yT = p->s1;
      p->xL = t0;
      p->xR = t1;
    }
  }
  return {a, b};
}

SmoothCover build_smooth_cover(const PatchRecord& patch, const std::vector<std::pair<double, double>>& samples,
                               int degree, double delta0) {
  if (!patch.curved()) throw Error(ErrorKind::InvalidInput, "cover: rect patches have no curved side");
  if (degree < 0) throw Error(ErrorKind::InvalidInput, "cover: negative degree");
  if (static_cast<int>(samples.size()) < degree + 2) throw Error(ErrorKind::InvalidInput, "cover: too few samples");
  SmoothCover c;
  c.degree = degree;
  c.center = 0.5 * (patch.s0 + patch.s1);
  c.half_width = 0.5 * (patch.s1 - patch.s0);
  const double sg = patch.orientation_sign();
  const int n = static_cast<int>(samples.size());
  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const double u = (samples[i].first - c.center) / c.half_width;
    double pw = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V(i, k) = pw;
      pw *= u;
    }
    rhs(i) = sg * samples[i].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  qr.setThreshold(1e-10);
  if (qr.rank() < degree + 1) throw Error(ErrorKind::Degenerate, "cover: rank-deficient polynomial fit");
  const Eigen::VectorXd coef = qr.solve(rhs);
  c.coeffs.assign(coef.data(), coef.data() + coef.size());
  double worst = -1e300;
  for (int i = 0; i < n; ++i) worst = std::max(worst, rhs(i) - c.fit(samples[i].first));
  c.delta = worst + delta0;
  return c;
}

void attach_smooth_covers(PatchDatabase& db, int degree, double delta0, int samples_per_patch) {
  for (auto& p : db.patches) {
    if (!p.curved()) continue;
    std::vector<std::pair<double, double>> s;
    s.reserve(samples_per_patch + 1);
    for (int k = 0; k <= samples_per_patch; ++k) {
      const double u = p.s0 + (p.s1 - p.s0) * k / samples_per_patch;
      s.emplace_back(u, p.side(u));
    }
    p.cover = build_smooth_cover(p, s, degree, delta0);
  }
}

bool patch_contains(const PatchRecord& patch, Point p, double tol) {
  if (patch.type == PatchType::Rect)
    return p.x >= patch.xL - tol && p.x <= patch.xR + tol && p.y >= patch.yB - tol && p.y <= patch.yT + tol;
  const Point c = patch.to_canonical(p);
  if (c.x < patch.s0 - tol || c.x > patch.s1 + tol) return false;
  if (c.y < patch.canonical_base() - tol) return false;
  const double s = std::clamp(c.x, patch.s0, patch.s1);
  return c.y <= patch.canonical_height(s) + tol;
}

CoverageReport check_coverage(const PatchDatabase& db, int per_cell) {
  const GridSpec& g = db.grid;
  const int nx = g.Kx * per_cell + 1, ny = g.Ky * per_cell + 1;
  const double dx = (g.box.b - g.box.a) / (nx - 1), dy = (g.box.d - g.box.c) / (ny - 1);
  auto X = [&](int i) { return g.box.a + i * dx; };
  auto Y = [&](int j) { return g.box.c + j * dy; };
  std::vector<char> cov(static_cast<size_t>(nx) * ny, 0);
  const double tol = 1e-10 * std::max(g.hx(), g.hy());
  for (const auto& p : db.patches) {
    const int i0 = std::max(0, static_cast<int>(std::floor((p.xL - g.box.a) / dx)) - 1);
    const int i1 = std::min(nx - 1, static_cast<int>(std::ceil((p.xR - g.box.a) / dx)) + 1);
    const int j0 = std::max(0, static_cast<int>(std::floor((p.yB - g.box.c) / dy)) - 1);
    const int j1 = std::min(ny - 1, static_cast<int>(std::ceil((p.yT - g.box.c) / dy)) + 1);
    if (p.type == PatchType::Rect) {
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
          if (patch_contains(p, {X(i), Y(j)}, tol)) cov[static_cast<size_t>(j) * nx + i] = 1;
      continue;
    }
    const bool straight_x = p.type == PatchType::Top || p.type == PatchType::Bottom;
    const int a0 = straight_x ? i0 : j0, a1 = straight_x ? i1 : j1;
    for (int a = a0; a <= a1; ++a) {
      const double s = straight_x ? X(a) : Y(a);
      if (s < p.s0 - tol || s > p.s1 + tol) continue;
      const double hgt = p.canonical_height(std::clamp(s, p.s0, p.s1));
      const double cb = p.canonical_base();
      const int b0 = straight_x ? j0 : i0, b1 = straight_x ? j1 : i1;
      for (int b = b0; b <= b1; ++b) {
        const Point q = straight_x ? Point{s, Y(b)} : Point{X(b), s};
        const double ch = p.to_canonical(q).y;
        if (ch >= cb - tol && ch <= hgt + tol) {
          const int i = straight_x ? a : b, j = straight_x ? b : a;
          cov[static_cast<size_t>(j) * nx + i] = 1;
        }
      }
    }
  }
  CoverageReport rep;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      ++rep.checked;
      const bool c = cov[static_cast<size_t>(j) * nx + i] != 0;
      if (c) {
        ++rep.covered;
        continue;
      }
      if (point_in_domain(db.curve, {X(i), Y(j)})) {
        if (rep.uncovered++ == 0) rep.first_uncovered = {X(i), Y(j)};
      }
    }
  return rep;
}

void write_partition_csv(const PatchDatabase& db, std::ostream& out) {
  out << "index,type,xL,xR,yB,yT,corner_cover,smooth_cover,cell_i,cell_j\n";
  out << std::setprecision(17);
  for (size_t k = 0; k < db.patches.size(); ++k) {
    const auto& p = db.patches[k];
    out << k << ',' << to_string(p.type) << ',' << p.xL << ',' << p.xR << ',' << p.yB << ',' << p.yT << ','
        << (p.corner_cover ? 1 : 0) << ',' << (p.cover ? 1 : 0) << ',' << p.cell_i << ',' << p.cell_j << '\n';
  }
}

}  // namespace lfe
