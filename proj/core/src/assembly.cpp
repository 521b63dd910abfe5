#include "lfe/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lfe/errors.hpp"

namespace lfe {

std::pair<std::int64_t, std::int64_t> quantize(Point p, double step) {
  return {std::llround(p.x / step), std::llround(p.y / step)};
}

namespace {

struct KeyHash {
  size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
    const auto a = static_cast<std::uint64_t>(k.first), b = static_cast<std::uint64_t>(k.second);
    return static_cast<size_t>(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
  }
};

}  // namespace

PointCloud assemble(const std::vector<PatchOutput>& outputs, double key_step) {
  if (!(key_step > 0.0)) throw Error(ErrorKind::InvalidInput, "assemble: key step must be positive");
  PointCloud cloud;
  cloud.key_step = key_step;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, int, KeyHash> seen;
  std::vector<cplx> vals;
  size_t total = 0;
  for (const auto& o : outputs) total += o.points.size();
  seen.reserve(total);
  vals.reserve(total);
  cloud.points.reserve(total);
  cloud.patch.reserve(total);
  cloud.keys.reserve(total);
  for (const auto& o : outputs) {
    for (size_t k = 0; k < o.points.size(); ++k) {
      if (!o.mask[k]) continue;
      const auto key = quantize(o.points[k], key_step);
      if (!seen.emplace(key, static_cast<int>(cloud.points.size())).second) continue;
      cloud.points.push_back(o.points[k]);
      vals.push_back(o.values(static_cast<Eigen::Index>(k)));
      cloud.patch.push_back(o.patch);
      cloud.keys.push_back(key);
    }
  }
  cloud.values = Eigen::Map<ComplexVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return cloud;
}

RealVector pointwise_errors(const PointCloud& cloud, const Oracle& f) {
  RealVector e(static_cast<Eigen::Index>(cloud.size()));
  for (size_t k = 0; k < cloud.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    e(i) = std::abs(cloud.values(i) - f(cloud.points[k].x, cloud.points[k].y));
  }
  return e;
}

ErrorReport error_report(const PointCloud& cloud, const Oracle& f, const PatchDatabase& db) {
  ErrorReport r;
  r.points = static_cast<long>(cloud.size());
  r.patch_max.assign(db.patches.size(), 0.0);
  const RealVector e = pointwise_errors(cloud, f);
  for (size_t k = 0; k < cloud.size(); ++k) {
    const int p = cloud.patch[k];
    if (p < 0 || p >= static_cast<int>(db.patches.size()))
      throw Error(ErrorKind::InvalidInput, "error_report: cloud point refers to an unknown patch");
    r.patch_max[p] = std::max(r.patch_max[p], e(static_cast<Eigen::Index>(k)));
  }
  std::array<double, 5> sum{};
  for (size_t p = 0; p < db.patches.size(); ++p) {
    const int t = static_cast<int>(db.patches[p].type);
    ++r.patches[t];
    r.emax[t] = std::max(r.emax[t], r.patch_max[p]);
    sum[t] += r.patch_max[p];
    r.global_max = std::max(r.global_max, r.patch_max[p]);
  }
  for (int t = 0; t < 5; ++t) r.eavg[t] = r.patches[t] ? sum[t] / r.patches[t] : 0.0;
  return r;
}

void write_cloud_csv(const PointCloud& cloud, const RealVector& errors, std::ostream& out) {
  out << "x,y,value_re,value_im,abs_error,patch_index\n";
  char buf[256];
  for (size_t k = 0; k < cloud.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", cloud.points[k].x, cloud.points[k].y,
                  cloud.values(i).real(), cloud.values(i).imag(), errors(i), cloud.patch[k]);
    out << buf;
  }
}

void write_error_pgm(const PointCloud& cloud, const RealVector& errors, const Box& box, int width, std::ostream& out) {
  if (width < 1) throw Error(ErrorKind::InvalidInput, "pixmap width must be positive");
  const double w = box.b - box.a, h = box.d - box.c;
  const int height = std::max(1, static_cast<int>(std::lround(width * h / w)));
  std::vector<int> px(static_cast<size_t>(width) * height, 0);
  for (size_t k = 0; k < cloud.size(); ++k) {
    const int i = std::clamp(static_cast<int>((cloud.points[k].x - box.a) / w * width), 0, width - 1);
    const int j = std::clamp(static_cast<int>((box.d - cloud.points[k].y) / h * height), 0, height - 1);
    const double e = errors(static_cast<Eigen::Index>(k));
    const double l = std::clamp(e > 0.0 ? std::log10(e) : -16.0, -16.0, 0.0);
    const int v = 1 + static_cast<int>(std::lround((l + 16.0) / 16.0 * 254.0));
    int& slot = px[static_cast<size_t>(j) * width + i];
    slot = std::max(slot, v);
  }
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) out << px[static_cast<size_t>(j) * width + i] << (i + 1 < width ? ' ' : '\n');
  }
}

}  // namespace lfe
