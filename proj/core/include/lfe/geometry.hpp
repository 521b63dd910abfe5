#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lfe {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Box {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;  // [a,b] x [c,d]
};

class CurveIndex;

/// Closed curve t in [0, 2pi) -> (x(t), y(t)), always stored counterclockwise,
/// with a dense polyline of N_gamma samples at t_k = 2 pi k / N_gamma.
class ParametricCurve {
 public:
  using Map = std::function<Point(double)>;

  ParametricCurve() = default;
  ParametricCurve(std::string name, Map position, Map derivative, int n_gamma);

  Point operator()(double t) const;
  Point derivative(double t) const;

  const std::vector<Point>& polyline() const;
  int samples() const;
  double param(int k) const;
  const std::string& name() const;
  Box bounding_box() const;
  double signed_area() const;
  /// Max distance between the curve and the polyline, sampled at segment midpoints.
  double polyline_deviation() const;
  const CurveIndex& index() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

enum class BuiltinCurve { SmoothBlob, RoughBlob };

/// Default N_gamma: 4096 for the smooth blob, 32768 for the rough blob.
int default_samples(BuiltinCurve which);
ParametricCurve builtin_curve(BuiltinCurve which, int n_gamma = 0);
ParametricCurve builtin_curve(const std::string& name, int n_gamma = 0);
/// Radial perturbation used by the rough blob.
double rough_radial_perturbation(double t);
ParametricCurve circle_curve(Point center, double radius, int n_gamma);
ParametricCurve ellipse_curve(Point center, double rx, double ry, int n_gamma);
/// Axis-aligned rectangle traversed at constant speed on each side.
ParametricCurve rectangle_curve(Box box, int n_gamma);
/// Text file with one "t x y" sample per line, samples uniform in t over one period.
ParametricCurve load_curve_file(const std::string& path, int n_gamma = 0);

/// Even-odd test on the polyline; points near the polyline are resolved against the exact curve
/// and points within 1e-12 of it count as inside.
bool point_in_domain(const ParametricCurve& curve, Point p);
/// Distance from p to the polyline.
double polyline_distance(const ParametricCurve& curve, Point p);
/// Indices k of polyline segments [P_k, P_{k+1}] whose bounding boxes meet `box`, ascending.
std::vector<int> segments_in_box(const ParametricCurve& curve, const Box& box);

struct GridSpec {
  Box box;
  int Kx = 20;
  int Ky = 20;

  double hx() const { return (box.b - box.a) / Kx; }
  double hy() const { return (box.d - box.c) / Ky; }
  double x(int i) const { return i == Kx ? box.b : box.a + i * hx(); }
  double y(int j) const { return j == Ky ? box.d : box.c + j * hy(); }
  void validate() const;
};

/// Default background box: the unit square when the curve fits inside it with a margin,
/// otherwise the padded bounding box.
Box default_box(const ParametricCurve& curve);

enum class LineAxis { Vertical, Horizontal };

struct Intersection {
  LineAxis axis = LineAxis::Vertical;
  int line = 0;          // grid line index (x_i or y_j)
  double coord = 0.0;    // the other coordinate of the crossing
  double t = 0.0;        // curve parameter
  int direction = 0;     // sign of d/dt of the line-normal coordinate
};

struct LineIntersections {
  std::vector<std::vector<Intersection>> vertical;    // per x_i, i = 0..Kx, sorted by y
  std::vector<std::vector<Intersection>> horizontal;  // per y_j, j = 0..Ky, sorted by x
  int grazing_skipped = 0;
};

LineIntersections line_intersections(const ParametricCurve& curve, const GridSpec& grid);

/// Refines a root of x(t) - v (axis Vertical) or y(t) - v (Horizontal) bracketed by [t0, t1].
double refine_crossing(const ParametricCurve& curve, LineAxis axis, double v, double t0, double t1);

}  // namespace lfe
