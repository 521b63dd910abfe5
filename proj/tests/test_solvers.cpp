#include <gtest/gtest.h>

#include <cmath>

#include "lfe/errors.hpp"
#include "lfe/functions.hpp"
#include "lfe/solvers.hpp"

using namespace lfe;

namespace {

double max_error(const PatchOutput& o, const Oracle& f) {
  double e = 0.0;
  for (size_t k = 0; k < o.points.size(); ++k)
    if (o.mask[k]) e = std::max(e, std::abs(o.values(static_cast<Eigen::Index>(k)) - f(o.points[k].x, o.points[k].y)));
  return e;
}

}  // namespace

TEST(Solvers, RectPatchResolvesSmoothFunction) {
  const SolverContext ctx{SolverConfig{}};
  const Oracle f = make_function("sinxy");
  const PatchOutput o = solve_rect(f, make_rect_patch(Box{0.4, 0.45, 0.6, 0.65}), ctx);
  EXPECT_EQ(o.nx, 5 * 24 + 1);
  EXPECT_EQ(o.points.size(), static_cast<size_t>(o.nx) * o.ny);
  EXPECT_LE(max_error(o, f), 1e-11);
  EXPECT_DOUBLE_EQ(o.points.front().x, 0.4);
  EXPECT_DOUBLE_EQ(o.points.back().y, 0.65);
}

TEST(Solvers, SourceNodesFollowTheBackgroundGrid) {
  SolverConfig cfg;
  const SolverContext ctx(cfg);
  const PatchRecord p = make_top_patch(0, 0.05, 0.0, [](double) { return 0.0731; }, 0.05);
  const RealVector y = column_source_nodes(p, 0.0731, ctx);
  const double hf = 0.05 / 24;
  EXPECT_DOUBLE_EQ(y(0), 0.0);
  EXPECT_NEAR(y(1), hf, 1e-15);
  EXPECT_DOUBLE_EQ(y(y.size() - 1), 0.0731);
  EXPECT_EQ(y.size(), static_cast<Eigen::Index>(std::floor(0.0731 / hf)) + 2);
}

TEST(Solvers, ShortColumnsAreAugmentedToTheMinimum) {
  const SolverContext ctx{SolverConfig{}};
  const PatchRecord p = make_top_patch(0, 1, 0.0, [](double) { return 0.05; }, 1.0);
  const RealVector y = column_source_nodes(p, 0.05, ctx);
  EXPECT_EQ(y.size(), 8);
  for (Eigen::Index k = 1; k < y.size(); ++k) EXPECT_GT(y(k), y(k - 1));
}

TEST(Solvers, ColumnTransferIsAccurate) {
  const SolverContext ctx{SolverConfig{}};
  const Oracle f = make_function("u1");
  const PatchRecord p = make_top_patch(0, 0.5, 0.0, [](double x) { return 0.6 + 0.2 * x * x; }, 0.25);
  const ComplexVector v = transfer_column(f, p, 0.3, ctx);
  const double top = 0.6 + 0.2 * 0.09;
  for (int j = 0; j < ctx.op_y.m(); ++j) {
    const double y = top * ctx.op_y.nodes(j) / ctx.op_y.nodes(ctx.op_y.m() - 1);
    EXPECT_LE(std::abs(v(j) - f(0.3, y)), 1e-12);
  }
}

TEST(Solvers, CurvedPatchesOfEveryOrientation) {
  const SolverContext ctx{SolverConfig{}};
  const Oracle f = make_function("sinxy");
  const auto side = [](double s) { return 0.9 + 0.05 * std::sin(4.0 * s); };
  for (PatchType t : {PatchType::Top, PatchType::Bottom, PatchType::Left, PatchType::Right}) {
    PatchRecord p = make_top_patch(0.2, 0.3, 0.8, side, 0.1);
    p.type = t;
    if (t == PatchType::Bottom || t == PatchType::Left) {
      p.base = 1.0;
      p.side = [side](double s) { return 1.8 - side(s); };
    }
    const PatchOutput o = solve_curved(f, p, ctx);
    EXPECT_LE(max_error(o, f), 1e-11) << to_string(t);
  }
}

TEST(Solvers, CoveredSolveRestrictsToThePhysicalPatch) {
  SolverConfig cfg;
  cfg.cover.enabled = true;
  const SolverContext ctx(cfg);
  const Oracle f = make_function("u2");
  auto rough = [](double x) { return 0.5 + 0.01 * std::abs(std::sin(40.0 * x)); };
  PatchRecord p = make_top_patch(0, 0.25, 0.0, rough, 0.25);
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k <= 400; ++k) s.emplace_back(0.25 * k / 400, rough(0.25 * k / 400));
  p.cover = build_smooth_cover(p, s, 3, 1e-3);
  const PatchOutput o = solve_covered(f, p, ctx);
  EXPECT_FALSE(o.fallback);
  int masked = 0;
  for (size_t k = 0; k < o.points.size(); ++k) {
    if (!o.mask[k]) {
      ++masked;
      EXPECT_GT(o.points[k].y, rough(o.points[k].x));
    } else {
      EXPECT_LE(o.points[k].y, rough(o.points[k].x) + 1e-15);
    }
  }
  EXPECT_GT(masked, 0);
  EXPECT_LE(max_error(o, f), 1e-8);
  EXPECT_GT(max_error(solve_curved(f, p, ctx), f), 100 * max_error(o, f));
}

TEST(Solvers, CoveredSolveFallsBackWhenCoverIsBelowTheBoundary) {
  SolverConfig cfg;
  cfg.cover.enabled = true;
  const SolverContext ctx(cfg);
  PatchRecord p = make_top_patch(0, 0.25, 0.0, [](double) { return 0.5; }, 0.25);
  SmoothCover c;
  c.center = 0.125;
  c.half_width = 0.125;
  c.coeffs = {0.4};
  p.cover = c;
  const PatchOutput o = solve_covered(make_function("u1"), p, ctx);
  EXPECT_TRUE(o.fallback);
  EXPECT_FALSE(o.warning.empty());
}

TEST(Solvers, NonFiniteOracleIsANumericFailure) {
  const SolverContext ctx{SolverConfig{}};
  const Oracle bad = [](double x, double) { return cplx(x > 0.5 ? std::nan("") : 0.0); };
  try {
    solve_rect(bad, make_rect_patch(Box{0, 1, 0, 1}), ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericFailure);
  }
}

TEST(Solvers, ParallelSolveIsBitwiseIdentical) {
  const ParametricCurve c = builtin_curve("smooth");
  const PatchDatabase db = scan_partition(c, GridSpec{default_box(c), 8, 8});
  const SolverContext ctx{SolverConfig{}};
  const Oracle f = make_function("f3");
  const auto a = solve_all(f, db, ctx, 1);
  const auto b = solve_all(f, db, ctx, 3);
  ASSERT_EQ(a.size(), b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].patch, static_cast<int>(k));
    EXPECT_TRUE((a[k].values.array() == b[k].values.array()).all());
  }
}

TEST(Solvers, ConfigValidation) {
  SolverConfig cfg;
  cfg.refine = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.refine = 5;
  cfg.cover.enabled = true;
  cfg.cover.degree = 9;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Functions, RegistryValues) {
  EXPECT_NEAR(make_function("sinxy")(0.5, 2.0).real(), std::sin(1.0) / 5.0, 1e-15);
  EXPECT_NEAR(make_function("f1")(0.3, 0.3).real(), 0.0, 1e-15);
  EXPECT_NEAR(make_function("f4")(0.0, 0.0).real(), 0.2782174908708290, 1e-12);  // Ai(-15)
  const cplx v = make_function("sepexp(2, -1.5)")(0.25, 0.5);
  EXPECT_NEAR(std::arg(v), 0.5 - 0.75, 1e-15);
  EXPECT_THROW(make_function("nope"), Error);
  EXPECT_THROW(make_function("sepexp(a,1)"), Error);
}
