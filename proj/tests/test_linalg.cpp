#include <gtest/gtest.h>

#include <random>

#include "lfe/errors.hpp"
#include "lfe/linalg.hpp"

using namespace lfe;

namespace {

ComplexMatrix random_matrix(int m, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  ComplexMatrix A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = cplx(d(rng), d(rng));
  return A;
}

}  // namespace

TEST(Svd, ReconstructsAndIsOrthonormal) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const ComplexMatrix A = random_matrix(30, 12, seed);
    const SvdFactors F = svd(A);
    const ComplexMatrix R = F.U * F.S.asDiagonal() * F.V.adjoint();
    EXPECT_LE((R - A).norm() / A.norm(), 1e-12);
    EXPECT_LE((F.U.adjoint() * F.U - ComplexMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((F.V.adjoint() * F.V - ComplexMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-12);
    for (int j = 1; j < F.S.size(); ++j) EXPECT_GE(F.S(j - 1), F.S(j));
  }
}

TEST(Svd, PhaseConventionMakesLargestEntryRealPositive) {
  const SvdFactors F = svd(random_matrix(10, 6, 7));
  for (int j = 0; j < F.U.cols(); ++j) {
    Eigen::Index k;
    F.U.col(j).cwiseAbs().maxCoeff(&k);
    EXPECT_GT(F.U(k, j).real(), 0.0);
    EXPECT_NEAR(F.U(k, j).imag(), 0.0, 1e-14);
  }
}

TEST(Svd, RejectsNonFiniteInput) {
  ComplexMatrix A = random_matrix(4, 3, 1);
  A(1, 1) = cplx(std::nan(""), 0.0);
  EXPECT_THROW(svd(A), Error);
}

TEST(Tsvd, MatchesQrLeastSquaresOnWellConditionedSystem) {
  const ComplexMatrix A = random_matrix(40, 10, 3);
  const ComplexVector b = random_matrix(40, 1, 4).col(0);
  const TsvdSolution s = tsvd_solve(svd(A), b, 1e-12);
  const ComplexVector ref = A.colPivHouseholderQr().solve(b);
  EXPECT_EQ(s.retained, 10);
  EXPECT_LE((s.x - ref).norm() / ref.norm(), 1e-12);
}

TEST(Tsvd, TruncatesSmallSingularValues) {
  RealVector S(4);
  S << 1.0, 1e-6, 1e-11, 1e-13;
  EXPECT_EQ(retained_count(S, 1e-12), 3);
  EXPECT_EQ(retained_count(S, 1e-5), 1);
}

TEST(Tsvd, ZeroMatrixIsDegenerate) {
  const SvdFactors F = svd(ComplexMatrix::Zero(5, 3));
  try {
    tsvd_solve(F, ComplexVector::Ones(5), 1e-12);
    FAIL() << "expected Degenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
  }
}

TEST(LstsqOneVar, MinimizesResidual) {
  const ComplexVector a = random_matrix(8, 1, 11).col(0);
  const ComplexVector b = random_matrix(8, 1, 12).col(0);
  const cplx alpha = lstsq_one_var(a, b);
  // Optimality: the residual b + alpha a is orthogonal to a.
  EXPECT_LE(std::abs(a.dot(b + alpha * a)), 1e-12 * a.norm() * b.norm());
  const double r0 = (b + alpha * a).norm();
  for (cplx d : {cplx(1e-3, 0), cplx(0, 1e-3), cplx(-1e-3, 0)}) EXPECT_GE((b + (alpha + d) * a).norm(), r0);
}

TEST(LstsqOneVar, ZeroColumnSignals) {
  EXPECT_THROW(lstsq_one_var(ComplexVector::Zero(4), ComplexVector::Ones(4)), Error);
}
