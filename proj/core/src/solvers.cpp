#include "lfe/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lfe/errors.hpp"

namespace lfe {

void SolverConfig::validate() const {
  fx.validate();
  fy.validate();
  if (refine < 1) throw Error(ErrorKind::InvalidInput, "solver: refinement factor must be >= 1");
  if (n_min < 2) throw Error(ErrorKind::InvalidInput, "solver: n_min must be >= 2");
  if (cover.enabled && n_min < cover.degree + 2)
    throw Error(ErrorKind::InvalidInput, "solver: n_min must be >= cover degree + 2");
}

SolverContext::SolverContext(const SolverConfig& c) : cfg(c) {
  cfg.validate();
  op_x = build_uniform_operator(cfg.fx);
  op_y = build_uniform_operator(cfg.fy);
  fine_x = uniform_nodes(cfg.refine * (op_x.m() - 1) + 1, cfg.fx.T);
  fine_y = uniform_nodes(cfg.refine * (op_y.m() - 1) + 1, cfg.fy.T);
}

namespace {

double frac(const RealVector& t, Eigen::Index k) { return t(k) / t(t.size() - 1); }

// Canonical oracle: f evaluated at the physical image of (s, h).
cplx eval_canonical(const Oracle& f, const PatchRecord& p, double s, double h) {
  const Point q = p.to_physical(s, h);
  const cplx v = f(q.x, q.y);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrorKind::NumericFailure, "oracle returned a non-finite value");
  return v;
}

// Shared tail of the curved solvers: 2D solve of the transferred array and evaluation on the
// refined grid, with heights taken from `height`.
PatchOutput finish_curved(const ComplexMatrix& data, const PatchRecord& patch, const SolverContext& ctx,
                          const std::function<double(double)>& height) {
  const ComplexMatrix V = solve_eval2d(data, ctx.op_x, ctx.op_y, ctx.fine_x, ctx.fine_y);
  PatchOutput out;
  out.nx = static_cast<int>(ctx.fine_x.size());
  out.ny = static_cast<int>(ctx.fine_y.size());
  out.points.resize(static_cast<size_t>(out.nx) * out.ny);
  out.values.resize(out.points.size());
  out.mask.assign(out.points.size(), 1);
  const double cb = patch.canonical_base();
  for (int i = 0; i < out.nx; ++i) {
    const double s = patch.s0 + (patch.s1 - patch.s0) * frac(ctx.fine_x, i);
    const double top = height(s);
    for (int j = 0; j < out.ny; ++j) {
      const double h = cb + (top - cb) * frac(ctx.fine_y, j);
      const size_t k = static_cast<size_t>(j) * out.nx + i;
      out.points[k] = patch.to_physical(s, h);
      out.values(static_cast<Eigen::Index>(k)) = V(j, i);
    }
  }
  return out;
}

double column_height_floor(const PatchRecord& patch) {
  return 1e-10 * std::max({std::abs(patch.s1 - patch.s0), patch.cell_h, 1e-300});
}

}  // namespace

PatchOutput solve_rect(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx) {
  if (patch.type != PatchType::Rect) throw Error(ErrorKind::InvalidInput, "solve_rect: patch is not rectangular");
  const int mx = ctx.op_x.m(), my = ctx.op_y.m();
  ComplexMatrix data(my, mx);
  for (int j = 0; j < my; ++j) {
    const double y = patch.yB + (patch.yT - patch.yB) * frac(ctx.op_y.nodes, j);
    for (int i = 0; i < mx; ++i) {
      const double x = patch.xL + (patch.xR - patch.xL) * frac(ctx.op_x.nodes, i);
      data(j, i) = eval_canonical(f, patch, x, y);
    }
  }
  const double top = patch.yT;
  return finish_curved(data, patch, ctx, [top](double) { return top; });
}

RealVector column_source_nodes(const PatchRecord& patch, double top, const SolverContext& ctx) {
  const double cb = patch.canonical_base();
  const double H = top - cb;
  const int my = ctx.op_y.m();
  std::vector<double> y;
  if (ctx.cfg.sampling == SamplingMode::GridPlusIntersection) {
    const double hf = patch.cell_h / (my - 1);
    for (int k = 0;; ++k) {
      const double v = cb + k * hf;
      if (v >= top - 1e-3 * hf) break;
      y.push_back(v);
    }
    y.push_back(top);
  } else {
    const int n = std::max(my, ctx.cfg.n_min);
    for (int k = 0; k < n; ++k) y.push_back(cb + H * k / (n - 1));
    y.back() = top;
  }
  // Augment short columns with midpoints of the widest gaps.
  while (static_cast<int>(y.size()) < ctx.cfg.n_min) {
    size_t g = 0;
    for (size_t k = 1; k + 1 < y.size(); ++k)
      if (y[k + 1] - y[k] > y[g + 1] - y[g]) g = k;
    y.insert(y.begin() + static_cast<long>(g) + 1, 0.5 * (y[g] + y[g + 1]));
  }
  return Eigen::Map<RealVector>(y.data(), static_cast<Eigen::Index>(y.size()));
}

namespace {

// Maps canonical heights to reference nodes in [0, 2pi/T_y] for a column of the given height.
RealVector to_reference(const RealVector& y, double cb, double top, const SolverContext& ctx) {
  const double L = ctx.cfg.fy.period_fraction();
  RealVector s(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) s(k) = std::clamp((y(k) - cb) / (top - cb), 0.0, 1.0) * L;
  s(y.size() - 1) = L;
  return s;
}

}  // namespace

ComplexVector transfer_column(const Oracle& f, const PatchRecord& patch, double s, const SolverContext& ctx) {
  if (!patch.curved()) throw Error(ErrorKind::InvalidInput, "transfer_column: patch is not curved");
  const double cb = patch.canonical_base();
  const double top = patch.canonical_height(s);
  if (!(top - cb > column_height_floor(patch)))
    throw Error(ErrorKind::Degenerate, "transfer_column: degenerate column height");
  const RealVector y = column_source_nodes(patch, top, ctx);
  ComplexVector vals(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) vals(k) = eval_canonical(f, patch, s, y(k));
  return transfer_custom(to_reference(y, cb, top, ctx), ctx.cfg.fy, vals, ctx.op_y.nodes);
}

PatchOutput solve_curved(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx) {
  if (!patch.curved()) throw Error(ErrorKind::InvalidInput, "solve_curved: patch is not curved");
  const int mx = ctx.op_x.m(), my = ctx.op_y.m();
  ComplexMatrix data(my, mx);
  for (int i = 0; i < mx; ++i) {
    const double s = patch.s0 + (patch.s1 - patch.s0) * frac(ctx.op_x.nodes, i);
    data.col(i) = transfer_column(f, patch, s, ctx);
  }
  return finish_curved(data, patch, ctx, [&patch](double s) { return patch.canonical_height(s); });
}

PatchOutput solve_covered(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx) {
  if (!patch.curved() || !patch.cover) throw Error(ErrorKind::InvalidInput, "solve_covered: patch has no cover");
  const SmoothCover& bc = *patch.cover;
  const int mx = ctx.op_x.m(), my = ctx.op_y.m();
  const double cb = patch.canonical_base();
  ComplexMatrix data(my, mx);
  try {
    for (int i = 0; i < mx; ++i) {
      const double s = patch.s0 + (patch.s1 - patch.s0) * frac(ctx.op_x.nodes, i);
      const double b = patch.canonical_height(s);
      const double top = bc(s);
      if (!(b - cb > column_height_floor(patch)) || !(top > b))
        throw Error(ErrorKind::Degenerate, "solve_covered: cover does not enclose the column");
      const RealVector known = column_source_nodes(patch, b, ctx);
      RealVector all(known.size() + 1);
      all.head(known.size()) = known;
      all(known.size()) = top;
      ComplexVector kv(known.size());
      for (Eigen::Index k = 0; k < known.size(); ++k) kv(k) = eval_canonical(f, patch, s, known(k));
      const Fe1dOperator op = build_custom_operator(to_reference(all, cb, top, ctx), ctx.cfg.fy);
      ComplexVector full(all.size());
      full.head(kv.size()) = kv;
      full(kv.size()) = complete_one_value(op, kv);
      data.col(i) = transfer(op, full, ctx.op_y.nodes);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    PatchOutput out = solve_curved(f, patch, ctx);
    out.fallback = true;
    out.warning = std::string("cover completion unavailable, direct solve used: ") + e.what();
    return out;
  }
  PatchOutput out = finish_curved(data, patch, ctx, [&bc](double s) { return bc(s); });
  // Keep only points of the physical patch.
  for (size_t k = 0; k < out.points.size(); ++k) {
    const Point c = patch.to_canonical(out.points[k]);
    out.mask[k] = c.y <= patch.canonical_height(std::clamp(c.x, patch.s0, patch.s1)) ? 1 : 0;
  }
  return out;
}

PatchOutput solve_patch(const Oracle& f, const PatchRecord& patch, const SolverContext& ctx) {
  if (patch.type == PatchType::Rect) return solve_rect(f, patch, ctx);
  if (ctx.cfg.cover.enabled && patch.cover) return solve_covered(f, patch, ctx);
  return solve_curved(f, patch, ctx);
}

std::vector<PatchOutput> solve_all(const Oracle& f, const PatchDatabase& db, const SolverContext& ctx, int threads) {
  const int n = static_cast<int>(db.patches.size());
  std::vector<PatchOutput> out(n);
  auto work = [&](int k) {
    out[k] = solve_patch(f, db.patches[k], ctx);
    out[k].patch = k;
  };
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int k = 0; k < n; ++k) work(k);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int k = next++; k < n; k = next++) {
        try {
          work(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

double fine_spacing(const GridSpec& grid, const SolverContext& ctx) {
  return std::min(grid.hx() / (ctx.cfg.refine * (ctx.op_x.m() - 1)), grid.hy() / (ctx.cfg.refine * (ctx.op_y.m() - 1)));
}

}  // namespace lfe
