#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lfe {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thin SVD A = U diag(S) V^*, S descending, r = min(m, n) columns.
/// The largest-magnitude entry of every column of U is real and positive.
struct SvdFactors {
  ComplexMatrix U;
  RealVector S;
  ComplexMatrix V;
};

SvdFactors svd(const ComplexMatrix& A);

/// Number of singular values with S_j > eps_rel * S_1.
int retained_count(const RealVector& S, double eps_rel);

struct TsvdSolution {
  ComplexVector x;
  int retained = 0;
};

/// x = V diag(1/S_j, S_j > eps_rel S_1) U^* b. Throws Degenerate when nothing is retained.
TsvdSolution tsvd_solve(const SvdFactors& F, const ComplexVector& b, double eps_rel);

/// Column-wise tsvd_solve for a block of right-hand sides.
ComplexMatrix tsvd_solve_block(const SvdFactors& F, const ComplexMatrix& B, double eps_rel);

/// alpha minimising ||b + a alpha||_2, i.e. -<a,b>/<a,a>.
cplx lstsq_one_var(const ComplexVector& a, const ComplexVector& b);

}  // namespace lfe
