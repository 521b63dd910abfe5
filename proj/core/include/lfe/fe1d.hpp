#pragma once

#include "lfe/linalg.hpp"

namespace lfe {

struct Fe1dParams {
  double T = 4.0;
  int N = 10;
  double gamma = 1.2;
  double eps_rel = 1e-12;

  int q() const { return 2 * N + 1; }
  /// Right end of the extension interval [0, 2 pi / T].
  double period_fraction() const;
  void validate() const;
};

/// Node count floor(gamma (2N+1)) of the uniform reference grid.
int uniform_node_count(const Fe1dParams& p);

/// Fourier extension operator on a node set in [0, 2 pi / T].
struct Fe1dOperator {
  Fe1dParams params;
  RealVector nodes;
  ComplexMatrix A;  // A(k, l+N) = exp(i l t_k)
  SvdFactors factors;
  int retained = 0;

  int m() const { return static_cast<int>(nodes.size()); }
};

/// Uniform nodes on [0, 2 pi / T], both endpoints included.
RealVector uniform_nodes(int m, double T);

ComplexMatrix fourier_matrix(const RealVector& t, int N);

Fe1dOperator build_uniform_operator(const Fe1dParams& p);
Fe1dOperator build_custom_operator(const RealVector& nodes, const Fe1dParams& p);

ComplexVector solve_coeffs(const Fe1dOperator& op, const ComplexVector& values);
/// Solves every column of `values` (m x k) and returns q x k coefficients.
ComplexMatrix solve_coeffs_block(const Fe1dOperator& op, const ComplexMatrix& values);

/// Sum_l c_l exp(i l t) at each point; c is ordered l = -N..N. T only defines the nominal interval.
ComplexVector eval_series(const ComplexVector& coeffs, double T, const RealVector& points);

ComplexVector transfer(const Fe1dOperator& op, const ComplexVector& values, const RealVector& targets);
/// Same result as transfer(build_custom_operator(nodes, p), values, targets), through a QR of the
/// node matrix so the left singular vectors are never formed.
ComplexVector transfer_custom(const RealVector& nodes, const Fe1dParams& p, const ComplexVector& values,
                              const RealVector& targets);

/// Value at the last node of `op` that makes the completed data vector closest to the retained
/// singular subspace. `known` holds the first m-1 values.
cplx complete_one_value(const Fe1dOperator& op, const ComplexVector& known);

/// max over `trials` random unit vectors v of ||Q v|| / ||v||, Q the node-to-node projection.
double measured_stability(const Fe1dOperator& op, int trials, unsigned seed);

/// Effective frequency omega * dx * T / (2 pi).
double effective_frequency(double omega, double dx, double T);

}  // namespace lfe
