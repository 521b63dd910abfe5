#pragma once

#include "lfe/fe1d.hpp"

namespace lfe {

/// Samples on the (op_y.m x op_x.m) node grid; rows follow y, columns follow x.
using LocalDataArray = ComplexMatrix;
/// (2N_y+1) x (2N_x+1) coefficients c(q+N_y, l+N_x).
using CoeffMatrix = ComplexMatrix;

/// Rows with op_x, then the resulting coefficient columns with op_y.
CoeffMatrix solve2d(const LocalDataArray& data, const Fe1dOperator& op_x, const Fe1dOperator& op_y);

/// Values at the tensor grid pts_y x pts_x (result is |pts_y| x |pts_x|).
ComplexMatrix eval2d(const CoeffMatrix& c, const RealVector& pts_x, const RealVector& pts_y, double T_x,
                     double T_y);

/// eval2d(solve2d(data)) computed one direction at a time. Equal in exact arithmetic, but the
/// intermediate 1D coefficients stay small, which avoids cancellation when the data carry noise.
ComplexMatrix solve_eval2d(const LocalDataArray& data, const Fe1dOperator& op_x, const Fe1dOperator& op_y,
                           const RealVector& pts_x, const RealVector& pts_y);

/// Q_x: node-to-node projection of op_x applied to every row.
ComplexMatrix apply_qx(const LocalDataArray& data, const Fe1dOperator& op_x);
/// Q_y: node-to-node projection of op_y applied to every column.
ComplexMatrix apply_qy(const LocalDataArray& data, const Fe1dOperator& op_y);

struct DirectionalErrors {
  double E_x = 0.0;
  double E_y = 0.0;
  double kappa_x = 0.0;
};

/// Trapezoidal L2 norms of (I - Q_x) g and (I - Q_y) g on the node grid, and the weighted
/// 2-norm of the row projection Q_x.
DirectionalErrors directional_errors(const LocalDataArray& data, const Fe1dOperator& op_x,
                                     const Fe1dOperator& op_y);

/// Trapezoidal L2 norm on the node grid.
double node_l2(const ComplexMatrix& g, const Fe1dOperator& op_x, const Fe1dOperator& op_y);

/// max |(I-Q)g - [(I-Q_x)g + Q_x (I-Q_y) g]| / ||g||_max over the node grid.
double operator_identity_residual(const LocalDataArray& data, const Fe1dOperator& op_x,
                                  const Fe1dOperator& op_y);

}  // namespace lfe
