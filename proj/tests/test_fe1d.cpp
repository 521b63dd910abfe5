#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lfe/errors.hpp"
#include "lfe/fe1d.hpp"

using namespace lfe;

TEST(Fe1d, NodeCountAndEndpoints) {
  const Fe1dParams p;  // T = 4, N = 10, gamma = 1.2
  EXPECT_EQ(uniform_node_count(p), 25);
  EXPECT_EQ(uniform_node_count(Fe1dParams{4.0, 10, 2.0, 1e-12}), 42);
  const RealVector t = uniform_nodes(25, 4.0);
  EXPECT_DOUBLE_EQ(t(0), 0.0);
  EXPECT_DOUBLE_EQ(t(24), std::numbers::pi / 2);
}

TEST(Fe1d, RejectsInvalidParameters) {
  EXPECT_THROW(build_uniform_operator(Fe1dParams{1.0, 10, 1.2, 1e-12}), Error);
  EXPECT_THROW(build_uniform_operator(Fe1dParams{4.0, 0, 1.2, 1e-12}), Error);
  EXPECT_THROW(build_uniform_operator(Fe1dParams{4.0, 10, 0.5, 1e-12}), Error);
}

TEST(Fe1d, ReproducesEveryModeInSpace) {
  const Fe1dParams p;
  const Fe1dOperator op = build_uniform_operator(p);
  const RealVector fine = uniform_nodes(241, p.T);
  for (int l = -p.N; l <= p.N; ++l) {
    ComplexVector v(op.m());
    for (int k = 0; k < op.m(); ++k) v(k) = std::polar(1.0, l * op.nodes(k));
    const ComplexVector y = transfer(op, v, fine);
    double err = 0.0;
    for (Eigen::Index k = 0; k < fine.size(); ++k) err = std::max(err, std::abs(y(k) - std::polar(1.0, l * fine(k))));
    EXPECT_LE(err, 1e-9) << "mode " << l;
  }
}

TEST(Fe1d, ApproximatesNonPeriodicFunction) {
  const Fe1dParams p{4.0, 16, 2.0, 1e-12};
  const Fe1dOperator op = build_uniform_operator(p);
  const double L = p.period_fraction();
  auto f = [L](double t) { return cplx(std::exp(t / L) * std::cos(3.0 * t / L)); };
  ComplexVector v(op.m());
  for (int k = 0; k < op.m(); ++k) v(k) = f(op.nodes(k));
  const RealVector fine = uniform_nodes(401, p.T);
  const ComplexVector y = transfer(op, v, fine);
  for (Eigen::Index k = 0; k < fine.size(); ++k) EXPECT_LE(std::abs(y(k) - f(fine(k))), 1e-10);
}

TEST(Fe1d, CustomNodesRejectCoincidentPoints) {
  RealVector t(4);
  t << 0.0, 0.1, 0.1 + 1e-15, 0.5;
  EXPECT_THROW(build_custom_operator(t, Fe1dParams{}), Error);
  t << 0.0, 0.1, -0.2, 0.5;
  EXPECT_THROW(build_custom_operator(t, Fe1dParams{}), Error);
}

TEST(Fe1d, CustomNodesTransferToUniformTargets) {
  const Fe1dParams p;
  const double L = p.period_fraction();
  RealVector t(33);
  for (int k = 0; k < 33; ++k) t(k) = L * std::pow(k / 32.0, 1.3);
  const Fe1dOperator op = build_custom_operator(t, p);
  auto f = [L](double s) { return cplx(std::sin(2.0 * s / L + 0.3)); };
  ComplexVector v(33);
  for (int k = 0; k < 33; ++k) v(k) = f(t(k));
  const RealVector tgt = uniform_nodes(25, p.T);
  const ComplexVector y = transfer(op, v, tgt);
  for (int k = 0; k < 25; ++k) EXPECT_LE(std::abs(y(k) - f(tgt(k))), 1e-11);
}

TEST(Fe1d, CompletionRecoversMissingEndValue) {
  const Fe1dParams p;
  const double L = p.period_fraction();
  RealVector t(31);
  for (int k = 0; k < 30; ++k) t(k) = 0.9 * L * k / 29.0;
  t(30) = L;
  const Fe1dOperator op = build_custom_operator(t, p);
  ASSERT_LT(op.retained, op.m());
  auto f = [L](double s) { return cplx(std::cos(1.5 * s / L), 0.5 * s / L); };
  ComplexVector known(30);
  for (int k = 0; k < 30; ++k) known(k) = f(t(k));
  EXPECT_LE(std::abs(complete_one_value(op, known) - f(L)), 1e-6);
  EXPECT_EQ(complete_one_value(op, ComplexVector::Zero(30)), cplx(0.0));
}

TEST(Fe1d, CompletionContinuesInSpaceModeAcrossCoverGap) {
  // Known nodes up to the boundary, artificial node one small gap beyond, as in a cover column.
  const Fe1dParams p;
  const double L = p.period_fraction();
  RealVector t(26);
  for (int k = 0; k < 25; ++k) t(k) = 0.99 * L * k / 24.0;
  t(25) = L;
  const Fe1dOperator op = build_custom_operator(t, p);
  ComplexVector known(25);
  for (int k = 0; k < 25; ++k) known(k) = std::polar(1.0, 2.0 * t(k));
  EXPECT_LE(std::abs(complete_one_value(op, known) - std::polar(1.0, 2.0 * L)), 1e-8);
}

TEST(Fe1d, CompletionNeedsDiscardedDirections) {
  Fe1dParams p{4.0, 10, 1.0, 0.0};
  RealVector t = uniform_nodes(21, p.T);
  const Fe1dOperator op = build_custom_operator(t, p);
  if (op.retained == op.m()) EXPECT_THROW(complete_one_value(op, ComplexVector::Zero(20)), Error);
}

TEST(Fe1d, StabilityIsModest) {
  const Fe1dOperator op = build_uniform_operator(Fe1dParams{});
  const double s = measured_stability(op, 50, 3);
  EXPECT_GT(s, 0.5);
  EXPECT_LE(s, 1.0 + 1e-12);
}

TEST(Fe1d, EffectiveFrequency) {
  EXPECT_DOUBLE_EQ(effective_frequency(2.0 * std::numbers::pi, 0.5, 4.0), 2.0);
}

TEST(Fe1d, QrTransferMatchesOperatorTransfer) {
  const Fe1dParams p;
  const double L = p.period_fraction();
  const RealVector tgt = uniform_nodes(25, p.T);
  for (int n : {12, 25, 44, 120}) {
    RealVector t(n);
    for (int k = 0; k < n; ++k) t(k) = L * std::pow(k / (n - 1.0), 1.3);
    ComplexVector v(n);
    for (int k = 0; k < n; ++k) v(k) = cplx(std::exp(0.4 * t(k)), std::sin(3.0 * t(k)));
    const ComplexVector a = transfer(build_custom_operator(t, p), v, tgt);
    const ComplexVector b = transfer_custom(t, p, v, tgt);
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10) << n;
    if (n < 2 * p.N + 1) continue;
    for (int k = 0; k < 25; ++k)
      EXPECT_LE(std::abs(b(k) - cplx(std::exp(0.4 * tgt(k)), std::sin(3.0 * tgt(k)))), 1e-9) << n;
  }
}
