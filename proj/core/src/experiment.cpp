#include "lfe/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "lfe/assembly.hpp"
#include "lfe/errors.hpp"
#include "lfe/functions.hpp"

namespace lfe {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T x{};
  is >> x;
  if (!is || !is.eof()) throw Error(ErrorKind::InvalidInput, "invalid value for " + key + ": " + v);
  return x;
}

bool parse_on_off(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw Error(ErrorKind::InvalidInput, "invalid value for " + key + ": " + v + " (expected on|off)");
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + p.string());
  return f;
}

void close_out(std::ofstream& f, const std::filesystem::path& p) {
  f.close();
  if (!f) throw Error(ErrorKind::Io, "write failed: " + p.string());
}

double default_delta0(const RunConfig& cfg, const GridSpec& g) {
  if (cfg.cover_delta0 > 0.0) return cfg.cover_delta0;
  return 1e-3 * std::hypot(g.box.b - g.box.a, g.box.d - g.box.c);
}

PatchDatabase build_database(const RunConfig& cfg, const ParametricCurve& curve) {
  PatchDatabase db = scan_partition(curve, GridSpec{default_box(curve), cfg.K, cfg.K});
  if (cfg.cover) attach_smooth_covers(db, cfg.cover_degree, default_delta0(cfg, db.grid));
  return db;
}

void write_patch_map(const PatchDatabase& db, int width, std::ostream& out) {
  const Box& b = db.grid.box;
  const double w = b.b - b.a, h = b.d - b.c;
  const int height = std::max(1, static_cast<int>(std::lround(width * h / w)));
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const Point p{b.a + (i + 0.5) * w / width, b.d - (j + 0.5) * h / height};
      int v = 0;
      for (const auto& pr : db.patches) {
        if (p.x < pr.xL || p.x > pr.xR || p.y < pr.yB || p.y > pr.yT) continue;
        if (patch_contains(pr, p, 0.0)) {
          v = 50 * (static_cast<int>(pr.type) + 1);
          break;
        }
      }
      out << v << (i + 1 < width ? ' ' : '\n');
    }
  }
}

std::string counts_block(const PatchDatabase& db) {
  const PatchCounts c = db.counts();
  std::ostringstream s;
  s << "patches=" << c.total << "\n";
  for (int t = 0; t < 5; ++t) s << "patches." << to_string(static_cast<PatchType>(t)) << '=' << c.by_type[t] << "\n";
  s << "corner_covers=" << c.corner_covers << "\n";
  return s.str();
}

int resolve_threads(int t) {
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_partition(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& summary) {
  const ParametricCurve curve = curve_from_spec(cfg.curve);
  const PatchDatabase db = build_database(cfg, curve);
  {
    auto p = dir / "partition.csv";
    auto f = open_out(p);
    write_partition_csv(db, f);
    close_out(f, p);
  }
  {
    auto p = dir / "patch_map.pgm";
    auto f = open_out(p);
    write_patch_map(db, 400, f);
    close_out(f, p);
  }
  summary << counts_block(db);
}

void run_approx(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& summary) {
  const ParametricCurve curve = curve_from_spec(cfg.curve);
  const Oracle f = make_function(cfg.func);
  const PatchDatabase db = build_database(cfg, curve);
  const SolverContext ctx(solver_config(cfg));
  const auto outputs = solve_all(f, db, ctx, resolve_threads(cfg.threads));
  const PointCloud cloud = assemble(outputs, 0.5 * fine_spacing(db.grid, ctx));
  const ErrorReport rep = error_report(cloud, f, db);
  const RealVector err = pointwise_errors(cloud, f);
  {
    auto p = dir / "cloud.csv";
    auto o = open_out(p);
    write_cloud_csv(cloud, err, o);
    close_out(o, p);
  }
  {
    auto p = dir / "error_map.pgm";
    auto o = open_out(p);
    write_error_pgm(cloud, err, db.grid.box, 400, o);
    close_out(o, p);
  }
  summary << counts_block(db);
  summary << "points=" << rep.points << "\n";
  summary << "global_max_error=" << sci(rep.global_max) << "\n";
  int fallbacks = 0;
  for (const auto& o : outputs) fallbacks += o.fallback ? 1 : 0;
  summary << "cover_fallbacks=" << fallbacks << "\n";
  summary << "# type count Einf_max Einf_avg\n";
  for (int t = 0; t < 5; ++t)
    summary << "error." << to_string(static_cast<PatchType>(t)) << '=' << rep.patches[t] << ' ' << sci(rep.emax[t])
            << ' ' << sci(rep.eavg[t]) << "\n";
}

void run_calibrate(const std::filesystem::path& dir, std::ostream& summary) {
  const CalibrationProtocol proto;
  const double gammas[] = {1.0, 1.2, 1.5, 2.0, 4.0};
  const double Ts[] = {1.2, 1.5, 2.0, 3.0, 4.0, 6.0};
  std::ostringstream t1, t2;
  t1 << "gamma,N,T_min\n";
  t2 << "T,gamma,N_threshold\n";
  for (double g : gammas) {
    const SweepResult r = find_Tmin(g, proto.tmin_N, proto.tmin_target, proto.tmin_step, proto.setup);
    t1 << fmt(g) << ',' << proto.tmin_N << ',' << fmt(r.T_min) << "\n";
    summary << "T_min.gamma=" << fmt(g) << ' ' << fmt(r.T_min) << "\n";
    auto p = dir / ("sweep_T_gamma" + fmt(g) + ".csv");
    auto o = open_out(p);
    write_sweep_csv(r, o);
    close_out(o, p);
  }
  for (double T : Ts) {
    const SweepResult r = find_Nthreshold(T, proto.nthr_gamma, proto.nthr_target, proto.setup);
    t2 << fmt(T) << ',' << fmt(proto.nthr_gamma) << ',' << r.N_threshold << "\n";
    summary << "N_threshold.T=" << fmt(T) << ' ' << r.N_threshold << "\n";
    auto p = dir / ("sweep_N_T" + fmt(T) + ".csv");
    auto o = open_out(p);
    write_sweep_csv(r, o);
    close_out(o, p);
  }
  for (auto [name, s] : {std::pair{"tmin.csv", t1.str()}, std::pair{"nthreshold.csv", t2.str()}}) {
    auto p = dir / name;
    auto o = open_out(p);
    o << s;
    close_out(o, p);
  }
}

void run_bench(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& summary) {
  const ParametricCurve curve = curve_from_spec(cfg.curve);
  const Oracle f = make_function(cfg.func);
  SolverConfig sc = solver_config(cfg);
  const ScalingResult r = bench_scaling(curve, {cfg.K / 2, cfg.K, 2 * cfg.K}, sc, f, std::max(3, cfg.repeats));
  auto p = dir / "timing.csv";
  auto o = open_out(p);
  write_timing_csv(r, o);
  close_out(o, p);
  summary << "linearity=" << sci(r.linearity) << "\n";
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "command") c.command = v;
  else if (key == "curve") c.curve = v;
  else if (key == "K") c.K = parse_number<int>(key, v);
  else if (key == "T") c.T = parse_number<double>(key, v);
  else if (key == "gamma") c.gamma = parse_number<double>(key, v);
  else if (key == "n") c.N = parse_number<int>(key, v);
  else if (key == "refine") c.refine = parse_number<int>(key, v);
  else if (key == "eps-rel") c.eps_rel = parse_number<double>(key, v);
  else if (key == "cover") c.cover = parse_on_off(key, v);
  else if (key == "cover-degree") c.cover_degree = parse_number<int>(key, v);
  else if (key == "cover-delta0") c.cover_delta0 = parse_number<double>(key, v);
  else if (key == "func") c.func = v;
  else if (key == "out") c.out = v;
  else if (key == "threads") c.threads = parse_number<int>(key, v);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
  else if (key == "repeats") c.repeats = parse_number<int>(key, v);
  else throw Error(ErrorKind::InvalidInput, "unknown configuration key: " + key);
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidInput, "config line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot read config file " + path);
  std::ostringstream s;
  s << f.rdbuf();
  apply_config_text(cfg, s.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream s;
  s << "command=" << c.command << "\n"
    << "curve=" << c.curve << "\n"
    << "K=" << c.K << "\n"
    << "T=" << fmt(c.T) << "\n"
    << "gamma=" << fmt(c.gamma) << "\n"
    << "n=" << c.N << "\n"
    << "refine=" << c.refine << "\n"
    << "eps-rel=" << fmt(c.eps_rel) << "\n"
    << "cover=" << (c.cover ? "on" : "off") << "\n"
    << "cover-degree=" << c.cover_degree << "\n"
    << "cover-delta0=" << fmt(c.cover_delta0) << "\n"
    << "func=" << c.func << "\n"
    << "out=" << c.out << "\n"
    << "threads=" << c.threads << "\n"
    << "seed=" << c.seed << "\n"
    << "repeats=" << c.repeats << "\n";
  return s.str();
}

ParametricCurve curve_from_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_curve_file(spec.substr(5));
  return builtin_curve(spec);
}

SolverConfig solver_config(const RunConfig& c) {
  if (c.K < 1) throw Error(ErrorKind::InvalidInput, "K must be >= 1");
  SolverConfig s;
  s.fx = Fe1dParams{c.T, c.N, c.gamma, c.eps_rel};
  s.fy = s.fx;
  s.refine = c.refine;
  s.cover.enabled = c.cover;
  s.cover.degree = c.cover_degree;
  s.cover.delta0 = c.cover_delta0;
  s.validate();
  return s;
}

int run_experiment(const RunConfig& cfg, std::ostream& log) {
  try {
    const std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + cfg.out + ": " + ec.message());
    std::ostringstream summary;
    summary << echo_config(cfg);
    if (cfg.command == "partition") run_partition(cfg, dir, summary);
    else if (cfg.command == "approx") run_approx(cfg, dir, summary);
    else if (cfg.command == "calibrate") run_calibrate(dir, summary);
    else if (cfg.command == "bench") run_bench(cfg, dir, summary);
    else throw Error(ErrorKind::InvalidInput, "unknown command: " + cfg.command);
    auto p = dir / "summary.txt";
    auto o = open_out(p);
    o << summary.str();
    close_out(o, p);
    log << summary.str();
    return 0;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace lfe
