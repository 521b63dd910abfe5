#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lfe/errors.hpp"
#include "lfe/partition.hpp"

using namespace lfe;

namespace {

PatchDatabase smooth_db(int K) {
  const ParametricCurve c = builtin_curve("smooth");
  return scan_partition(c, GridSpec{default_box(c), K, K});
}

}  // namespace

TEST(Partition, CellClassesOnCircle) {
  const ParametricCurve c = circle_curve({0.5, 0.5}, 0.3, 4096);
  const CellClassMatrix m = classify_cells(c, GridSpec{Box{0, 1, 0, 1}, 10, 10});
  // Cells fully inside the circle of radius 0.3 centred in the unit square: the 4 central cells
  // [0.3,0.7]^2 corners are at distance 0.283 < 0.3.
  for (int j = 3; j < 7; ++j)
    for (int i = 3; i < 7; ++i) EXPECT_EQ(m.at(i, j), CellClass::Interior) << i << ',' << j;
  EXPECT_EQ(m.at(0, 0), CellClass::Exterior);
  EXPECT_EQ(m.at(5, 8), CellClass::Boundary);
  EXPECT_EQ(m.count(CellClass::Interior) + m.count(CellClass::Boundary) + m.count(CellClass::Exterior), 100);
}

TEST(Partition, CoarseSmoothBlobHasOnlyBoundaryPatches) {
  const PatchDatabase db = smooth_db(5);
  const PatchCounts c = db.counts();
  EXPECT_EQ(c.by_type[static_cast<int>(PatchType::Rect)], 0);
  EXPECT_GE(c.total, 12);  // 14 +- 20%
  EXPECT_LE(c.total, 16);
}

TEST(Partition, SmoothBlobPatchCountAtK20) {
  const PatchCounts c = smooth_db(20).counts();
  EXPECT_GE(c.total, 145);  // 170 +- 15%
  EXPECT_LE(c.total, 195);
  for (int t = 1; t < 5; ++t) EXPECT_GT(c.by_type[t], 0);
}

TEST(Partition, EveryInsidePointIsCovered) {
  for (int K : {5, 10, 20}) {
    const CoverageReport r = check_coverage(smooth_db(K), 24);
    EXPECT_EQ(r.uncovered, 0) << "K=" << K << " first at " << r.first_uncovered.x << ',' << r.first_uncovered.y;
    EXPECT_GT(r.covered, 0);
  }
  const ParametricCurve c = circle_curve({0.5, 0.5}, 0.31, 4096);
  EXPECT_EQ(check_coverage(scan_partition(c, GridSpec{Box{0, 1, 0, 1}, 12, 12}), 24).uncovered, 0);
}

TEST(Partition, CurvedSidesFollowTheBoundary) {
  const PatchDatabase db = smooth_db(10);
  for (const auto& p : db.patches) {
    if (!p.curved()) continue;
    for (int k = 0; k <= 8; ++k) {
      const double s = p.s0 + (p.s1 - p.s0) * k / 8.0;
      const Point q = p.to_physical(s, p.canonical_height(s));
      EXPECT_LE(polyline_distance(db.curve, q), 1e-6);
      EXPECT_GT(p.canonical_height(s), p.canonical_base());
    }
  }
}

TEST(Partition, CanonicalMapsAreInverse) {
  for (PatchType t : {PatchType::Top, PatchType::Bottom, PatchType::Left, PatchType::Right}) {
    PatchRecord p;
    p.type = t;
    const Point q{0.3, -0.7};
    const Point c = p.to_canonical(p.to_physical(q.x, q.y));
    EXPECT_DOUBLE_EQ(c.x, q.x);
    EXPECT_DOUBLE_EQ(c.y, q.y);
  }
}

TEST(Partition, SubdivisionPreservesTheUnion) {
  const PatchRecord p = make_top_patch(-1, 1, 0, [](double x) { return 1.2 + 0.3 * x * x; }, 0.5);
  const auto [a, b] = subdivide(p, Axis::X, 0.0);
  EXPECT_DOUBLE_EQ(a.s1, 0.0);
  EXPECT_DOUBLE_EQ(b.s0, 0.0);
  for (double x = -0.95; x < 1.0; x += 0.1)
    for (double y = 0.05; y < 1.5; y += 0.1) {
      const Point q{x, y};
      EXPECT_EQ(patch_contains(p, q, 0.0), patch_contains(a, q, 0.0) || patch_contains(b, q, 0.0));
    }
  EXPECT_THROW(subdivide(p, Axis::X, 1.5), Error);
  const auto [r0, r1] = subdivide(make_rect_patch(Box{0, 1, 0, 2}), Axis::Y, 0.5);
  EXPECT_DOUBLE_EQ(r0.yT, 0.5);
  EXPECT_DOUBLE_EQ(r1.yB, 0.5);
}

TEST(Partition, SmoothCoverStaysAboveSamples) {
  auto rough = [](double x) { return 1.0 + 0.1 * x + 0.02 * std::abs(std::sin(9.0 * x)); };
  const PatchRecord p = make_top_patch(0, 1, 0, rough, 0.5);
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k <= 500; ++k) s.emplace_back(k / 500.0, rough(k / 500.0));
  const SmoothCover c = build_smooth_cover(p, s, 3, 1e-3);
  double gap_max = 0.0;
  for (const auto& [x, y] : s) {
    EXPECT_GE(c(x) - y, 1e-3 - 1e-12);
    gap_max = std::max(gap_max, c(x) - y);
  }
  EXPECT_LE(gap_max, 0.05);
}

TEST(Partition, BottomCoverIsAnEnvelopeBelow) {
  PatchRecord p = make_top_patch(0, 1, 0, [](double x) { return -1.0 - 0.2 * x; }, 0.5);
  p.type = PatchType::Bottom;
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k <= 100; ++k) s.emplace_back(k / 100.0, p.side(k / 100.0) + 0.01 * std::sin(30.0 * k / 100.0));
  const SmoothCover c = build_smooth_cover(p, s, 3, 1e-3);
  // Canonical heights are negated physical coordinates, so the cover lies below the samples.
  for (const auto& [x, y] : s) EXPECT_GE(c(x), -y);
}

TEST(Partition, CsvHasOneRowPerPatch) {
  const PatchDatabase db = smooth_db(5);
  std::ostringstream os;
  write_partition_csv(db, os);
  std::istringstream is(os.str());
  std::string line;
  int rows = -1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(db.patches.size()));
}

TEST(Partition, PatchTypeNames) {
  for (int t = 0; t < 5; ++t) EXPECT_EQ(static_cast<int>(patch_type_from_string(to_string(static_cast<PatchType>(t)))), t);
}
