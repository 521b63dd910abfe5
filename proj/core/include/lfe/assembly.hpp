#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "lfe/solvers.hpp"

namespace lfe {

/// Deduplicated global output. Keys are coordinates quantized at `key_step`.
struct PointCloud {
  double key_step = 0.0;
  std::vector<Point> points;
  ComplexVector values;
  std::vector<int> patch;
  std::vector<std::pair<std::int64_t, std::int64_t>> keys;

  size_t size() const { return points.size(); }
};

std::pair<std::int64_t, std::int64_t> quantize(Point p, double step);

/// First writer wins per key; masked-out points are skipped. `key_step` is usually h_fine / 2.
PointCloud assemble(const std::vector<PatchOutput>& outputs, double key_step);

struct ErrorReport {
  std::array<double, 5> emax{};  // indexed by PatchType
  std::array<double, 5> eavg{};
  std::array<int, 5> patches{};
  std::vector<double> patch_max;  // per database patch, over its retained points
  double global_max = 0.0;
  long points = 0;
};

ErrorReport error_report(const PointCloud& cloud, const Oracle& f, const PatchDatabase& db);

/// Pointwise |f_h - f| for every cloud point.
RealVector pointwise_errors(const PointCloud& cloud, const Oracle& f);

/// x,y,value_re,value_im,abs_error,patch_index with 17 significant digits.
void write_cloud_csv(const PointCloud& cloud, const RealVector& errors, std::ostream& out);

/// Plain P2 pixmap of clip(log10(error), -16, 0) over `box`; empty pixels are 0, errors map to 1..255.
void write_error_pgm(const PointCloud& cloud, const RealVector& errors, const Box& box, int width, std::ostream& out);

}  // namespace lfe
