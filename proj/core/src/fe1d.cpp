#include "lfe/fe1d.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lfe/errors.hpp"

namespace lfe {

double Fe1dParams::period_fraction() const { return 2.0 * std::numbers::pi / T; }

void Fe1dParams::validate() const {
  if (!(T > 1.0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidInput, "fe1d: T must exceed 1");
  if (N < 1) throw Error(ErrorKind::InvalidInput, "fe1d: N must be at least 1");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw Error(ErrorKind::InvalidInput, "fe1d: gamma must be >= 1");
  if (!(eps_rel >= 0.0 && eps_rel < 1.0)) throw Error(ErrorKind::InvalidInput, "fe1d: eps_rel outside [0,1)");
}

int uniform_node_count(const Fe1dParams& p) {
  // Guard against gamma*q landing a hair below an integer.
  return static_cast<int>(std::floor(p.gamma * p.q() + 1e-9));
}

RealVector uniform_nodes(int m, double T) {
  const double L = 2.0 * std::numbers::pi / T;
  RealVector t(m);
  for (int k = 0; k < m; ++k) t(k) = L * k / (m - 1);
  t(m - 1) = L;
  return t;
}

ComplexMatrix fourier_matrix(const RealVector& t, int N) {
  ComplexMatrix A(t.size(), 2 * N + 1);
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const cplx w(std::cos(t(k)), std::sin(t(k)));
    const cplx wi = std::conj(w);
    A(k, N) = 1.0;
    cplx p = 1.0, pi = 1.0;
    for (int l = 1; l <= N; ++l) {
      // Recompute every 8 steps to limit drift of the running product.
      if (l % 8 == 0) {
        p = std::polar(1.0, l * t(k));
        pi = std::conj(p);
      } else {
        p *= w;
        pi *= wi;
      }
      A(k, N + l) = p;
      A(k, N - l) = pi;
    }
  }
  return A;
}

namespace {

Fe1dOperator finish(RealVector nodes, const Fe1dParams& p) {
  Fe1dOperator op;
  op.params = p;
  op.nodes = std::move(nodes);
  op.A = fourier_matrix(op.nodes, p.N);
  op.factors = svd(op.A);
  op.retained = retained_count(op.factors.S, p.eps_rel);
  return op;
}

}  // namespace

Fe1dOperator build_uniform_operator(const Fe1dParams& p) {
  p.validate();
  const int m = uniform_node_count(p);
  if (m < 2) throw Error(ErrorKind::InvalidInput, "fe1d: fewer than two nodes");
  return finish(uniform_nodes(m, p.T), p);
}

namespace {

void check_custom_nodes(const RealVector& nodes, const Fe1dParams& p) {
  p.validate();
  if (nodes.size() < 2) throw Error(ErrorKind::InvalidInput, "fe1d: fewer than two nodes");
  const double L = p.period_fraction();
  const double tol = 1e-12 * L;
  for (Eigen::Index k = 0; k < nodes.size(); ++k) {
    if (!std::isfinite(nodes(k)) || nodes(k) < -tol || nodes(k) > L + tol)
      throw Error(ErrorKind::InvalidInput, "fe1d: node outside [0, 2pi/T]");
    if (k > 0 && nodes(k) - nodes(k - 1) < tol)
      throw Error(ErrorKind::InvalidInput, "fe1d: nodes not strictly increasing");
  }
}

}  // namespace

Fe1dOperator build_custom_operator(const RealVector& nodes, const Fe1dParams& p) {
  check_custom_nodes(nodes, p);
  return finish(nodes, p);
}

ComplexVector transfer_custom(const RealVector& nodes, const Fe1dParams& p, const ComplexVector& values,
                              const RealVector& targets) {
  check_custom_nodes(nodes, p);
  if (values.size() != nodes.size()) throw Error(ErrorKind::InvalidInput, "transfer_custom: length mismatch");
  const ComplexMatrix A = fourier_matrix(nodes, p.N);
  const Eigen::Index n = A.cols();
  if (A.rows() <= n) return transfer(finish(nodes, p), values, targets);
  // A = Q R; A and R share singular values and right vectors, and U = Q U_R is never formed.
  const Eigen::HouseholderQR<ComplexMatrix> qr(A);
  const ComplexMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const ComplexVector qb = (qr.householderQ().adjoint() * values).head(n);
  const SvdFactors F = svd(R);
  const ComplexVector c = tsvd_solve(F, qb, p.eps_rel).x;
  return fourier_matrix(targets, p.N) * c;
}

ComplexVector solve_coeffs(const Fe1dOperator& op, const ComplexVector& values) {
  if (values.size() != op.m()) throw Error(ErrorKind::InvalidInput, "solve_coeffs: length mismatch");
  return tsvd_solve(op.factors, values, op.params.eps_rel).x;
}

ComplexMatrix solve_coeffs_block(const Fe1dOperator& op, const ComplexMatrix& values) {
  if (values.rows() != op.m()) throw Error(ErrorKind::InvalidInput, "solve_coeffs: length mismatch");
  return tsvd_solve_block(op.factors, values, op.params.eps_rel);
}

ComplexVector eval_series(const ComplexVector& coeffs, double /*T*/, const RealVector& points) {
  if (coeffs.size() % 2 == 0) throw Error(ErrorKind::InvalidInput, "eval_series: coefficient count must be odd");
  const int N = static_cast<int>(coeffs.size() / 2);
  return fourier_matrix(points, N) * coeffs;
}

ComplexVector transfer(const Fe1dOperator& op, const ComplexVector& values, const RealVector& targets) {
  return eval_series(solve_coeffs(op, values), op.params.T, targets);
}

cplx complete_one_value(const Fe1dOperator& op, const ComplexVector& known) {
  const int m = op.m();
  if (known.size() != m - 1) throw Error(ErrorKind::InvalidInput, "complete_one_value: need m-1 known values");
  const int I = op.retained;
  if (I >= m) throw Error(ErrorKind::Degenerate, "complete_one_value: no discarded directions");
  // Discarded directions span the orthogonal complement of the retained U columns, so
  // U0 U0^* = I - Ur Ur^*. Minimising ||U0^* f|| over the last entry is then the projected problem.
  const auto Ur = op.factors.U.leftCols(I);
  ComplexVector e = ComplexVector::Zero(m);
  e(m - 1) = 1.0;
  ComplexVector fin = ComplexVector::Zero(m);
  fin.head(m - 1) = known;
  const ComplexVector pe = e - Ur * (Ur.adjoint() * e);
  const ComplexVector pf = fin - Ur * (Ur.adjoint() * fin);
  if (pe.norm() < 1e-10) throw Error(ErrorKind::Degenerate, "complete_one_value: unknown is unconstrained");
  return lstsq_one_var(pe, pf);
}

double measured_stability(const Fe1dOperator& op, int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double best = 0.0;
  const int m = op.m();
  for (int k = 0; k < trials; ++k) {
    ComplexVector v(m);
    for (int i = 0; i < m; ++i) v(i) = cplx(g(rng), g(rng));
    v /= v.norm();
    const ComplexVector qv = op.A * solve_coeffs(op, v);
    best = std::max(best, qv.norm());
  }
  return best;
}

double effective_frequency(double omega, double dx, double T) {
  return omega * dx * T / (2.0 * std::numbers::pi);
}

}  // namespace lfe
