#include "lfe/fe2d.hpp"

#include <cmath>

#include "lfe/errors.hpp"

namespace lfe {

namespace {

void check_shape(const LocalDataArray& data, const Fe1dOperator& op_x, const Fe1dOperator& op_y) {
  if (data.rows() != op_y.m() || data.cols() != op_x.m())
    throw Error(ErrorKind::InvalidInput, "fe2d: data shape does not match operators");
}

RealVector trapezoid_weights(const RealVector& t) {
  const Eigen::Index n = t.size();
  RealVector w = RealVector::Zero(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double h = 0.5 * (t(k + 1) - t(k));
    w(k) += h;
    w(k + 1) += h;
  }
  return w;
}

// A pinv_I(A) = U_I U_I^*, applied without forming coefficients (which may be huge for rough data).
ComplexMatrix project(const Fe1dOperator& op, const ComplexMatrix& B) {
  const auto Ur = op.factors.U.leftCols(op.retained);
  return Ur * (Ur.adjoint() * B);
}

}  // namespace

CoeffMatrix solve2d(const LocalDataArray& data, const Fe1dOperator& op_x, const Fe1dOperator& op_y) {
  check_shape(data, op_x, op_y);
  // Row solves: (q_x x m_y), transposed to m_y x q_x.
  const ComplexMatrix rows = solve_coeffs_block(op_x, data.transpose()).transpose();
  return solve_coeffs_block(op_y, rows);
}

ComplexMatrix eval2d(const CoeffMatrix& c, const RealVector& pts_x, const RealVector& pts_y, double /*T_x*/,
                     double /*T_y*/) {
  if (c.rows() % 2 == 0 || c.cols() % 2 == 0) throw Error(ErrorKind::InvalidInput, "eval2d: odd sizes required");
  const ComplexMatrix Ex = fourier_matrix(pts_x, static_cast<int>(c.cols() / 2));
  const ComplexMatrix Ey = fourier_matrix(pts_y, static_cast<int>(c.rows() / 2));
  return Ey * c * Ex.transpose();
}

ComplexMatrix solve_eval2d(const LocalDataArray& data, const Fe1dOperator& op_x, const Fe1dOperator& op_y,
                           const RealVector& pts_x, const RealVector& pts_y) {
  check_shape(data, op_x, op_y);
  const ComplexMatrix Ex = fourier_matrix(pts_x, op_x.params.N);
  const ComplexMatrix Ey = fourier_matrix(pts_y, op_y.params.N);
  // Rows are evaluated before the y solves so no 2D coefficient array is ever summed.
  const ComplexMatrix rows = Ex * solve_coeffs_block(op_x, data.transpose());
  return Ey * solve_coeffs_block(op_y, rows.transpose());
}

ComplexMatrix apply_qx(const LocalDataArray& data, const Fe1dOperator& op_x) {
  return project(op_x, data.transpose()).transpose();
}

ComplexMatrix apply_qy(const LocalDataArray& data, const Fe1dOperator& op_y) {
  return project(op_y, data);
}

double node_l2(const ComplexMatrix& g, const Fe1dOperator& op_x, const Fe1dOperator& op_y) {
  const RealVector wx = trapezoid_weights(op_x.nodes);
  const RealVector wy = trapezoid_weights(op_y.nodes);
  double s = 0.0;
  for (Eigen::Index j = 0; j < g.rows(); ++j)
    for (Eigen::Index i = 0; i < g.cols(); ++i) s += wy(j) * wx(i) * std::norm(g(j, i));
  return std::sqrt(s);
}

DirectionalErrors directional_errors(const LocalDataArray& data, const Fe1dOperator& op_x,
                                     const Fe1dOperator& op_y) {
  check_shape(data, op_x, op_y);
  DirectionalErrors out;
  out.E_x = node_l2(data - apply_qx(data, op_x), op_x, op_y);
  out.E_y = node_l2(data - apply_qy(data, op_y), op_x, op_y);
  // Weighted norm of the m_x x m_x projection W^{1/2} Q W^{-1/2}; the y weights cancel row by row.
  const RealVector w = trapezoid_weights(op_x.nodes);
  const ComplexMatrix Q = project(op_x, ComplexMatrix::Identity(op_x.m(), op_x.m()));
  ComplexMatrix Qw(Q.rows(), Q.cols());
  for (Eigen::Index r = 0; r < Q.rows(); ++r)
    for (Eigen::Index c = 0; c < Q.cols(); ++c) Qw(r, c) = std::sqrt(w(r) / w(c)) * Q(r, c);
  out.kappa_x = svd(Qw).S(0);
  return out;
}

double operator_identity_residual(const LocalDataArray& data, const Fe1dOperator& op_x,
                                  const Fe1dOperator& op_y) {
  check_shape(data, op_x, op_y);
  const ComplexMatrix lhs = data - apply_qx(apply_qy(data, op_y), op_x);
  const ComplexMatrix rhs = (data - apply_qx(data, op_x)) + apply_qx(data - apply_qy(data, op_y), op_x);
  const double scale = data.cwiseAbs().maxCoeff();
  if (scale == 0.0) return (lhs - rhs).cwiseAbs().maxCoeff();
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

}  // namespace lfe
