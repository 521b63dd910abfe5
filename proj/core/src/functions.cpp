#include "lfe/functions.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <regex>

#include "lfe/errors.hpp"

namespace lfe {

namespace {

double parse_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "invalid number in function spec: " + s);
  return v;
}

}  // namespace

Oracle make_function(const std::string& spec) {
  if (spec == "sinxy") return [](double x, double y) { return cplx(std::sin(x * y) / (1.0 + y * y)); };
  if (spec == "u1") return [](double x, double y) { return cplx(std::sin(0.5 * x * y) / (1.0 + 0.25 * y * y)); };
  if (spec == "u2") return [](double x, double y) { return cplx(std::cos(1.45 * x) * std::sin(1.37 * y)); };
  if (spec == "f1") return [](double x, double y) { return cplx(std::erf(20.0 * (x - y))); };
  if (spec == "f2")
    return [](double x, double y) { return cplx(std::log(10.0 * (x + y)) / std::sqrt(x * x + y)); };
  if (spec == "f3") return [](double x, double y) { return cplx(std::sin(20.0 * (x * x + y * y))); };
  if (spec == "f4")
    return [](double x, double y) { return cplx(boost::math::airy_ai(-15.0 - 13.0 * (x + y))); };
  static const std::regex sep(R"(sepexp\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\))");
  std::smatch m;
  if (std::regex_match(spec, m, sep)) {
    const double wx = parse_double(m[1]), wy = parse_double(m[2]);
    return [wx, wy](double x, double y) { return std::polar(1.0, wx * x + wy * y); };
  }
  throw Error(ErrorKind::InvalidInput, "unknown function: " + spec);
}

std::vector<std::string> function_names() {
  return {"sepexp(wx,wy)", "sinxy", "u1", "u2", "f1", "f2", "f3", "f4"};
}

}  // namespace lfe
