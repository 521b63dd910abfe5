#include "lfe/linalg.hpp"

#include <cmath>

#include "lfe/errors.hpp"

namespace lfe {

SvdFactors svd(const ComplexMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) throw Error(ErrorKind::InvalidInput, "svd: empty matrix");
  if (!A.allFinite()) throw Error(ErrorKind::InvalidInput, "svd: non-finite entry");

  Eigen::BDCSVD<ComplexMatrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw Error(ErrorKind::NumericFailure, "svd: decomposition did not converge");
  SvdFactors F{dec.matrixU(), dec.singularValues(), dec.matrixV()};

  // Fix the phase of each singular pair.
  for (Eigen::Index j = 0; j < F.U.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < F.U.rows(); ++i) {
      const double v = std::abs(F.U(i, j));
      if (v > best * (1.0 + 1e-12)) {
        best = v;
        imax = i;
      }
    }
    if (best <= 0.0) continue;
    const cplx ph = std::conj(F.U(imax, j)) / best;
    F.U.col(j) *= ph;
    F.V.col(j) *= ph;
    F.U(imax, j) = cplx(F.U(imax, j).real(), 0.0);
  }
  return F;
}

int retained_count(const RealVector& S, double eps_rel) {
  if (S.size() == 0) return 0;
  const double cut = eps_rel * S(0);
  int I = 0;
  for (Eigen::Index j = 0; j < S.size(); ++j)
    if (S(j) > cut) ++I;
  return I;
}

namespace {

void check_eps(double eps_rel) {
  if (!(eps_rel >= 0.0 && eps_rel < 1.0)) throw Error(ErrorKind::InvalidInput, "tsvd: eps_rel outside [0,1)");
}

}  // namespace

TsvdSolution tsvd_solve(const SvdFactors& F, const ComplexVector& b, double eps_rel) {
  check_eps(eps_rel);
  if (b.size() != F.U.rows()) throw Error(ErrorKind::InvalidInput, "tsvd_solve: dimension mismatch");
  const int I = retained_count(F.S, eps_rel);
  if (I == 0) throw Error(ErrorKind::Degenerate, "tsvd_solve: all singular values truncated");
  ComplexVector w = F.U.leftCols(I).adjoint() * b;
  for (int j = 0; j < I; ++j) w(j) /= F.S(j);
  return {F.V.leftCols(I) * w, I};
}

ComplexMatrix tsvd_solve_block(const SvdFactors& F, const ComplexMatrix& B, double eps_rel) {
  check_eps(eps_rel);
  if (B.rows() != F.U.rows()) throw Error(ErrorKind::InvalidInput, "tsvd_solve: dimension mismatch");
  const int I = retained_count(F.S, eps_rel);
  if (I == 0) throw Error(ErrorKind::Degenerate, "tsvd_solve: all singular values truncated");
  ComplexMatrix W = F.U.leftCols(I).adjoint() * B;
  for (int j = 0; j < I; ++j) W.row(j) /= F.S(j);
  return F.V.leftCols(I) * W;
}

cplx lstsq_one_var(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "lstsq_one_var: length mismatch");
  const double na = a.norm();
  if (!(na >= 1e-300)) throw Error(ErrorKind::Degenerate, "lstsq_one_var: no constraint on the unknown");
  return -a.dot(b) / (na * na);
}

}  // namespace lfe
