#include "lfe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "lfe/errors.hpp"

namespace lfe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double sgn_pow(double s, double p) { return std::copysign(std::pow(std::abs(s), p), s); }

}  // namespace

// Uniform bucket grid over the polyline segments, plus horizontal bands for ray casting.
class CurveIndex {
 public:
  CurveIndex(const std::vector<Point>& pts, Box bb) : pts_(pts) {
    const int n = static_cast<int>(pts.size());
    nb_ = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(n))), 16, 512);
    const double padx = 1e-9 + 1e-6 * (bb.b - bb.a), pady = 1e-9 + 1e-6 * (bb.d - bb.c);
    box_ = {bb.a - padx, bb.b + padx, bb.c - pady, bb.d + pady};
    cells_.assign(static_cast<size_t>(nb_) * nb_, {});
    bands_.assign(nb_, {});
    for (int k = 0; k < n; ++k) {
      const Point& p = pts[k];
      const Point& q = pts[(k + 1) % n];
      const int i0 = ix(std::min(p.x, q.x)), i1 = ix(std::max(p.x, q.x));
      const int j0 = iy(std::min(p.y, q.y)), j1 = iy(std::max(p.y, q.y));
      for (int j = j0; j <= j1; ++j) {
        bands_[j].push_back(k);
        for (int i = i0; i <= i1; ++i) cells_[static_cast<size_t>(j) * nb_ + i].push_back(k);
      }
    }
  }

  const Box& box() const { return box_; }

  int crossings_right(Point p) const {
    const int n = static_cast<int>(pts_.size());
    int count = 0;
    for (int k : bands_[iy(p.y)]) {
      const Point& a = pts_[k];
      const Point& b = pts_[(k + 1) % n];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (xi > p.x) ++count;
      }
    }
    return count;
  }

  std::vector<int> candidates(const Box& q) const {
    std::vector<int> out;
    const int i0 = ix(q.a), i1 = ix(q.b), j0 = iy(q.c), j1 = iy(q.d);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        const auto& c = cells_[static_cast<size_t>(j) * nb_ + i];
        out.insert(out.end(), c.begin(), c.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  int ix(double x) const {
    const double f = (x - box_.a) / (box_.b - box_.a) * nb_;
    return std::clamp(static_cast<int>(std::floor(f)), 0, nb_ - 1);
  }
  int iy(double y) const {
    const double f = (y - box_.c) / (box_.d - box_.c) * nb_;
    return std::clamp(static_cast<int>(std::floor(f)), 0, nb_ - 1);
  }

  const std::vector<Point>& pts_;
  int nb_ = 16;
  Box box_;
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<int>> bands_;
};

struct ParametricCurve::Impl {
  std::string name;
  Map pos;
  Map der;
  std::vector<Point> poly;
  Box bbox;
  double area = 0.0;
  double deviation = 0.0;
  std::unique_ptr<CurveIndex> index;
};

ParametricCurve::ParametricCurve(std::string name, Map position, Map derivative, int n_gamma) {
  if (n_gamma < 16) throw Error(ErrorKind::InvalidInput, "curve: at least 16 polyline samples required");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->pos = std::move(position);
  impl->der = std::move(derivative);

  auto sample = [&](const Map& f) {
    std::vector<Point> pts(n_gamma);
    for (int k = 0; k < n_gamma; ++k) pts[k] = f(kTwoPi * k / n_gamma);
    double area = 0.0;
    for (int k = 0; k < n_gamma; ++k) {
      const Point& a = pts[k];
      const Point& b = pts[(k + 1) % n_gamma];
      area += a.x * b.y - b.x * a.y;
    }
    return std::make_pair(pts, 0.5 * area);
  };
  auto [pts, area] = sample(impl->pos);
  if (area < 0.0) {
    // Reverse the orientation so the interior lies to the left.
    Map p0 = impl->pos, d0 = impl->der;
    impl->pos = [p0](double t) { return p0(kTwoPi - t); };
    impl->der = [d0](double t) {
      const Point d = d0(kTwoPi - t);
      return Point{-d.x, -d.y};
    };
    std::tie(pts, area) = sample(impl->pos);
  }
  for (const Point& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorKind::InvalidInput, "curve: non-finite sample");
  impl->poly = std::move(pts);
  impl->area = area;
  Box bb{std::numeric_limits<double>::max(), -std::numeric_limits<double>::max(),
         std::numeric_limits<double>::max(), -std::numeric_limits<double>::max()};
  for (const Point& p : impl->poly) {
    bb.a = std::min(bb.a, p.x);
    bb.b = std::max(bb.b, p.x);
    bb.c = std::min(bb.c, p.y);
    bb.d = std::max(bb.d, p.y);
  }
  impl->bbox = bb;
  const int n = static_cast<int>(impl->poly.size());
  for (int k = 0; k < n; ++k) {
    const Point a = impl->poly[k], b = impl->poly[(k + 1) % n];
    const Point c = impl->pos(kTwoPi * (k + 0.5) / n);
    impl->deviation = std::max(impl->deviation, std::hypot(c.x - 0.5 * (a.x + b.x), c.y - 0.5 * (a.y + b.y)));
  }
  impl->index = std::make_unique<CurveIndex>(impl->poly, bb);
  impl_ = std::move(impl);
}

Point ParametricCurve::operator()(double t) const { return impl_->pos(wrap(t)); }
Point ParametricCurve::derivative(double t) const { return impl_->der(wrap(t)); }
const std::vector<Point>& ParametricCurve::polyline() const { return impl_->poly; }
int ParametricCurve::samples() const { return static_cast<int>(impl_->poly.size()); }
double ParametricCurve::param(int k) const { return kTwoPi * k / samples(); }
const std::string& ParametricCurve::name() const { return impl_->name; }
Box ParametricCurve::bounding_box() const { return impl_->bbox; }
double ParametricCurve::signed_area() const { return impl_->area; }
double ParametricCurve::polyline_deviation() const { return impl_->deviation; }
const CurveIndex& ParametricCurve::index() const { return *impl_->index; }

int default_samples(BuiltinCurve which) { return which == BuiltinCurve::SmoothBlob ? 4096 : 32768; }

double rough_radial_perturbation(double t) {
  return 0.012 * sgn_pow(std::sin(12.0 * t + 0.4), 1.2) + 0.007 * sgn_pow(std::cos(17.0 * t - 0.2), 1.2) +
         0.003 * std::sin(25.0 * t + 0.8);
}

namespace {

double rough_radial_derivative(double t) {
  const double s = std::sin(12.0 * t + 0.4), c = std::cos(17.0 * t - 0.2);
  return 0.012 * 1.2 * std::pow(std::abs(s), 0.2) * 12.0 * std::cos(12.0 * t + 0.4) +
         0.007 * 1.2 * std::pow(std::abs(c), 0.2) * (-17.0) * std::sin(17.0 * t - 0.2) +
         0.003 * 25.0 * std::cos(25.0 * t + 0.8);
}

// Unscaled reference shape of the rough blob and its derivative.
Point rough_base(double t) {
  const double r = 1.0 + 0.18 * std::cos(3.0 * t) - 0.08 * std::sin(2.0 * t);
  return {r * std::cos(t), 0.82 * r * std::sin(t)};
}
Point rough_base_d(double t) {
  const double r = 1.0 + 0.18 * std::cos(3.0 * t) - 0.08 * std::sin(2.0 * t);
  const double dr = -0.54 * std::sin(3.0 * t) - 0.16 * std::cos(2.0 * t);
  return {dr * std::cos(t) - r * std::sin(t), 0.82 * (dr * std::sin(t) + r * std::cos(t))};
}

// Extremum of one coordinate of the rough base shape: dense scan, then golden-section refinement.
double base_extreme(bool use_x, bool want_max) {
  auto f = [&](double t) {
    const Point p = rough_base(t);
    const double v = use_x ? p.x : p.y;
    return want_max ? -v : v;
  };
  const int n = 20000;
  int kbest = 0;
  double best = f(0.0);
  for (int k = 1; k < n; ++k) {
    const double v = f(kTwoPi * k / n);
    if (v < best) {
      best = v;
      kbest = k;
    }
  }
  double lo = kTwoPi * (kbest - 1) / n, hi = kTwoPi * (kbest + 1) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double v = f(0.5 * (lo + hi));
  return want_max ? -v : v;
}

}  // namespace

ParametricCurve builtin_curve(BuiltinCurve which, int n_gamma) {
  if (n_gamma <= 0) n_gamma = default_samples(which);
  if (which == BuiltinCurve::SmoothBlob) {
    auto pos = [](double t) {
      return Point{0.50 + 0.38 * std::cos(t) + 0.06 * std::cos(2.0 * t + 0.6) - 0.03 * std::sin(3.0 * t),
                   0.50 + 0.40 * std::sin(t) - 0.08 * std::sin(2.0 * t - 0.4) + 0.03 * std::cos(3.0 * t + 0.2)};
    };
    auto der = [](double t) {
      return Point{-0.38 * std::sin(t) - 0.12 * std::sin(2.0 * t + 0.6) - 0.09 * std::cos(3.0 * t),
                   0.40 * std::cos(t) - 0.16 * std::cos(2.0 * t - 0.4) - 0.09 * std::sin(3.0 * t + 0.2)};
    };
    return ParametricCurve("smooth-blob", pos, der, n_gamma);
  }
  const double xmin = base_extreme(true, false), xmax = base_extreme(true, true);
  const double ymin = base_extreme(false, false), ymax = base_extreme(false, true);
  const double sx = 0.84 / (xmax - xmin), sy = 0.84 / (ymax - ymin);
  auto pos = [=](double t) {
    const Point b = rough_base(t);
    const double X = 0.08 + sx * (b.x - xmin), Y = 0.08 + sy * (b.y - ymin);
    const double f = 1.0 + rough_radial_perturbation(t);
    return Point{0.5 + f * (X - 0.5), 0.5 + f * (Y - 0.5)};
  };
  auto der = [=](double t) {
    const Point b = rough_base(t);
    const Point db = rough_base_d(t);
    const double X = 0.08 + sx * (b.x - xmin), Y = 0.08 + sy * (b.y - ymin);
    const double f = 1.0 + rough_radial_perturbation(t), df = rough_radial_derivative(t);
    return Point{df * (X - 0.5) + f * sx * db.x, df * (Y - 0.5) + f * sy * db.y};
  };
  return ParametricCurve("rough-blob", pos, der, n_gamma);
}

ParametricCurve builtin_curve(const std::string& name, int n_gamma) {
  if (name == "smooth" || name == "smooth-blob") return builtin_curve(BuiltinCurve::SmoothBlob, n_gamma);
  if (name == "rough" || name == "rough-blob") return builtin_curve(BuiltinCurve::RoughBlob, n_gamma);
  throw Error(ErrorKind::InvalidInput, "unknown built-in curve: " + name);
}

ParametricCurve circle_curve(Point center, double radius, int n_gamma) {
  return ellipse_curve(center, radius, radius, n_gamma);
}

ParametricCurve ellipse_curve(Point center, double rx, double ry, int n_gamma) {
  auto pos = [=](double t) { return Point{center.x + rx * std::cos(t), center.y + ry * std::sin(t)}; };
  auto der = [=](double t) { return Point{-rx * std::sin(t), ry * std::cos(t)}; };
  return ParametricCurve("ellipse", pos, der, n_gamma);
}

ParametricCurve rectangle_curve(Box box, int n_gamma) {
  const double w = box.b - box.a, h = box.d - box.c, per = 2.0 * (w + h);
  auto pos = [=](double t) {
    double s = t / kTwoPi * per;
    if (s < w) return Point{box.a + s, box.c};
    s -= w;
    if (s < h) return Point{box.b, box.c + s};
    s -= h;
    if (s < w) return Point{box.b - s, box.d};
    s -= w;
    return Point{box.a, box.d - s};
  };
  auto der = [=](double t) {
    const double k = per / kTwoPi;
    double s = t / kTwoPi * per;
    if (s < w) return Point{k, 0.0};
    s -= w;
    if (s < h) return Point{0.0, k};
    s -= h;
    if (s < w) return Point{-k, 0.0};
    return Point{0.0, -k};
  };
  return ParametricCurve("rectangle", pos, der, n_gamma);
}

namespace {

// Periodic cubic spline through uniformly spaced samples y_k at s = k (period n).
struct PeriodicSpline {
  std::vector<double> y, m;  // values and second derivatives

  explicit PeriodicSpline(std::vector<double> v) : y(std::move(v)) {
    const int n = static_cast<int>(y.size());
    // m_{k-1} + 4 m_k + m_{k+1} = 6 (y_{k+1} - 2 y_k + y_{k-1}), cyclic; Sherman-Morrison.
    std::vector<double> rhs(n);
    for (int k = 0; k < n; ++k) rhs[k] = 6.0 * (y[(k + 1) % n] - 2.0 * y[k] + y[(k + n - 1) % n]);
    const double gam = -4.0;
    std::vector<double> b(n, 4.0);
    b[0] = 4.0 - gam;
    b[n - 1] = 4.0 - 1.0 / gam;
    auto tri = [&](std::vector<double> r) {
      std::vector<double> c(n), x(n);
      double bet = b[0];
      x[0] = r[0] / bet;
      for (int k = 1; k < n; ++k) {
        c[k] = 1.0 / bet;
        bet = b[k] - c[k];
        x[k] = (r[k] - x[k - 1]) / bet;
      }
      for (int k = n - 2; k >= 0; --k) x[k] -= c[k + 1] * x[k + 1];
      return x;
    };
    const std::vector<double> xs = tri(rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gam;
    u[n - 1] = 1.0;
    const std::vector<double> z = tri(u);
    const double fact = (xs[0] + xs[n - 1] / gam) / (1.0 + z[0] + z[n - 1] / gam);
    m.resize(n);
    for (int k = 0; k < n; ++k) m[k] = xs[k] - fact * z[k];
  }

  std::pair<double, double> eval(double s) const {
    const int n = static_cast<int>(y.size());
    s = std::fmod(s, static_cast<double>(n));
    if (s < 0) s += n;
    int k = static_cast<int>(std::floor(s));
    if (k >= n) k = n - 1;
    const double a = s - k, b = 1.0 - a;
    const int k1 = (k + 1) % n;
    const double v = b * y[k] + a * y[k1] + ((b * b * b - b) * m[k] + (a * a * a - a) * m[k1]) / 6.0;
    const double d = y[k1] - y[k] + ((1.0 - 3.0 * b * b) * m[k] + (3.0 * a * a - 1.0) * m[k1]) / 6.0;
    return {v, d};
  }
};

}  // namespace

ParametricCurve load_curve_file(const std::string& path, int n_gamma) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open curve file: " + path);
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    double t, x, y;
    if (!(ss >> t)) continue;
    if (!(ss >> x >> y)) throw Error(ErrorKind::Io, "malformed curve line: " + line);
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 8) throw Error(ErrorKind::InvalidInput, "curve file needs at least 8 samples");
  // Drop a repeated closing sample.
  if (std::hypot(xs.front() - xs.back(), ys.front() - ys.back()) < 1e-12) {
    xs.pop_back();
    ys.pop_back();
  }
  const int n = static_cast<int>(xs.size());
  auto sx = std::make_shared<PeriodicSpline>(xs);
  auto sy = std::make_shared<PeriodicSpline>(ys);
  const double scale = n / kTwoPi;
  auto pos = [=](double t) { return Point{sx->eval(t * scale).first, sy->eval(t * scale).first}; };
  auto der = [=](double t) { return Point{sx->eval(t * scale).second * scale, sy->eval(t * scale).second * scale}; };
  if (n_gamma <= 0) n_gamma = std::max(4096, 8 * n);
  return ParametricCurve("file:" + path, pos, der, n_gamma);
}

namespace {

double segment_distance(Point p, Point a, Point b, double* lambda) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double l = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  l = std::clamp(l, 0.0, 1.0);
  if (lambda) *lambda = l;
  return std::hypot(p.x - (a.x + l * dx), p.y - (a.y + l * dy));
}

struct Nearest {
  double dist = std::numeric_limits<double>::infinity();
  int seg = -1;
  double lambda = 0.0;
};

Nearest nearest_segment(const ParametricCurve& curve, Point p, double radius) {
  const auto& pts = curve.polyline();
  const int n = static_cast<int>(pts.size());
  Nearest best;
  for (int k : curve.index().candidates({p.x - radius, p.x + radius, p.y - radius, p.y + radius})) {
    double l;
    const double d = segment_distance(p, pts[k], pts[(k + 1) % n], &l);
    if (d < best.dist) best = {d, k, l};
  }
  return best;
}

double near_radius(const ParametricCurve& curve) {
  const Box bb = curve.bounding_box();
  return std::max(1e-5 * std::hypot(bb.b - bb.a, bb.d - bb.c), 4.0 * curve.polyline_deviation());
}

}  // namespace

double polyline_distance(const ParametricCurve& curve, Point p) {
  const Box bb = curve.bounding_box();
  double r = 1e-3 * std::hypot(bb.b - bb.a, bb.d - bb.c);
  for (;;) {
    const Nearest n = nearest_segment(curve, p, r);
    if (n.seg >= 0 && n.dist <= r) return n.dist;
    if (r > 10.0 * std::hypot(bb.b - bb.a, bb.d - bb.c) + std::hypot(p.x - bb.a, p.y - bb.c)) return n.dist;
    r *= 4.0;
  }
}

std::vector<int> segments_in_box(const ParametricCurve& curve, const Box& box) {
  const auto& pts = curve.polyline();
  const int n = static_cast<int>(pts.size());
  std::vector<int> out;
  for (int k : curve.index().candidates(box)) {
    const Point& a = pts[k];
    const Point& b = pts[(k + 1) % n];
    if (std::max(a.x, b.x) < box.a || std::min(a.x, b.x) > box.b) continue;
    if (std::max(a.y, b.y) < box.c || std::min(a.y, b.y) > box.d) continue;
    out.push_back(k);
  }
  return out;
}

bool point_in_domain(const ParametricCurve& curve, Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  const Box& ib = curve.index().box();
  if (p.x < ib.a || p.x > ib.b || p.y < ib.c || p.y > ib.d) return false;
  const double rn = near_radius(curve);
  const Nearest nn = nearest_segment(curve, p, rn);
  if (nn.seg >= 0 && nn.dist < rn) {
    if (nn.dist <= 1e-12) return true;
    // Closest point on the exact curve by Gauss-Newton on (c(t) - p) . c'(t) = 0.
    double t = curve.param(nn.seg) + nn.lambda * (curve.param(1) - curve.param(0));
    for (int it = 0; it < 30; ++it) {
      const Point c = curve(t), d = curve.derivative(t);
      const double dd = d.x * d.x + d.y * d.y;
      if (dd == 0.0) break;
      const double step = ((c.x - p.x) * d.x + (c.y - p.y) * d.y) / dd;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const Point c = curve(t), d = curve.derivative(t);
    const double ex = p.x - c.x, ey = p.y - c.y;
    if (std::hypot(ex, ey) <= 1e-12) return true;
    return d.x * ey - d.y * ex > 0.0;
  }
  return (curve.index().crossings_right(p) % 2) == 1;
}

void GridSpec::validate() const {
  if (!(box.a < box.b && box.c < box.d)) throw Error(ErrorKind::InvalidInput, "grid: empty box");
  if (Kx < 2 || Ky < 2) throw Error(ErrorKind::InvalidInput, "grid: at least 2 cells per axis");
}

Box default_box(const ParametricCurve& curve) {
  const Box bb = curve.bounding_box();
  const double m = 0.02;
  if (bb.a >= m && bb.b <= 1.0 - m && bb.c >= m && bb.d <= 1.0 - m) return {0.0, 1.0, 0.0, 1.0};
  const double px = 0.05 * (bb.b - bb.a), py = 0.05 * (bb.d - bb.c);
  return {bb.a - px, bb.b + px, bb.c - py, bb.d + py};
}

double refine_crossing(const ParametricCurve& curve, LineAxis axis, double v, double t0, double t1) {
  auto g = [&](double t) {
    const Point p = curve(t);
    return (axis == LineAxis::Vertical ? p.x : p.y) - v;
  };
  double g0 = g(t0);
  if (g0 == 0.0) return t0;
  for (int it = 0; it < 200; ++it) {
    const double tm = 0.5 * (t0 + t1);
    if (tm <= t0 || tm >= t1) break;
    const double gm = g(tm);
    if (gm == 0.0) return tm;
    if ((gm > 0.0) == (g0 > 0.0)) {
      t0 = tm;
      g0 = gm;
    } else {
      t1 = tm;
    }
  }
  const double ga = std::abs(g(t0)), gb = std::abs(g(t1));
  return ga <= gb ? t0 : t1;
}

LineIntersections line_intersections(const ParametricCurve& curve, const GridSpec& grid) {
  grid.validate();
  LineIntersections out;
  out.vertical.assign(grid.Kx + 1, {});
  out.horizontal.assign(grid.Ky + 1, {});
  const auto& pts = curve.polyline();
  const int n = static_cast<int>(pts.size());
  const double dt = kTwoPi / n;

  auto scan = [&](LineAxis axis) {
    const bool vert = axis == LineAxis::Vertical;
    const double base = vert ? grid.box.a : grid.box.c;
    const double h = vert ? grid.hx() : grid.hy();
    const int K = vert ? grid.Kx : grid.Ky;
    auto& lists = vert ? out.vertical : out.horizontal;
    for (int k = 0; k < n; ++k) {
      const double c0 = vert ? pts[k].x : pts[k].y;
      const double c1 = vert ? pts[(k + 1) % n].x : pts[(k + 1) % n].y;
      if (c0 == c1) continue;
      const double lo = std::min(c0, c1), hi = std::max(c0, c1);
      // Lines v with lo <= v < hi, using the half-open rule "sample >= v".
      int i0 = static_cast<int>(std::ceil((lo - base) / h)) - 1;
      int i1 = static_cast<int>(std::floor((hi - base) / h)) + 1;
      i0 = std::max(i0, 0);
      i1 = std::min(i1, K);
      for (int i = i0; i <= i1; ++i) {
        const double v = vert ? grid.x(i) : grid.y(i);
        if ((c0 >= v) == (c1 >= v)) continue;
        const double t = refine_crossing(curve, axis, v, curve.param(k), curve.param(k) + dt);
        const Point d = curve.derivative(t);
        const double dn = vert ? d.x : d.y;
        if (std::abs(dn) < 1e-7 * std::hypot(d.x, d.y)) {
          ++out.grazing_skipped;
          continue;
        }
        const Point p = curve(t);
        lists[i].push_back({axis, i, vert ? p.y : p.x, wrap(t), c1 > c0 ? 1 : -1});
      }
    }
    for (auto& l : lists)
      std::sort(l.begin(), l.end(), [](const Intersection& a, const Intersection& b) { return a.coord < b.coord; });
  };
  scan(LineAxis::Vertical);
  scan(LineAxis::Horizontal);
  return out;
}

}  // namespace lfe
