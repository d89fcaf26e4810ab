#include "sqbias/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace sqbias {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace

TwoPointFamily::TwoPointFamily(double p) : p_(p), q_(1.0 - p) {
  require(p > 0.0 && p < 1.0, "two-point parameter must lie in (0,1)");
  pos_ = std::sqrt(q_ / p_);
  neg_ = -std::sqrt(p_ / q_);
}

Distribution TwoPointFamily::dist() const {
  return Distribution::discrete({neg_, pos_}, {q_, p_});
}

TwoPointStats two_point_stats(double p) {
  require(p > 0.0 && p < 1.0, "two-point parameter must lie in (0,1)");
  const double q = 1.0 - p;
  const double s = std::sqrt(p * q);
  const double abs3 = (p * p + q * q) / s;
  const double l1 = std::abs(p - q) / s;
  return {(q - p) / s, abs3, l1, std::abs(1.0 - 2.0 * p) / (1.0 - 2.0 * p + 2.0 * p * p)};
}

ThreePointConfig::ThreePointConfig(double x_, double y_, double z_, double s2)
    : x(x_), y(y_), z(z_), sigma2(s2) {
  require(x < y && y <= 0.0 && 0.0 < z, "need x < y <= 0 < z");
  require(-y * z < sigma2 && sigma2 < -x * z,
          "sigma2 must lie strictly between -yz and -xz");
  p = (sigma2 + y * z) / ((z - x) * (y - x));
  q = -(sigma2 + x * z) / ((z - y) * (y - x));
  r = (sigma2 + x * y) / ((z - x) * (z - y));
  require(p > 0.0 && q > 0.0 && r > 0.0, "probabilities must be positive");
  require(std::abs(p + q + r - 1.0) <= 1e-12, "probabilities must sum to 1");
}

Distribution ThreePointConfig::dist() const {
  return Distribution::discrete({x, y, z}, {p, q, r});
}

double three_point_excess(const ThreePointConfig& cfg) {
  const double x = cfg.x, y = cfg.y, z = cfg.z, s2 = cfg.sigma2;
  const double x2 = x * x, z2 = z * z;
  if (!(s2 < std::max(x2, z2)))
    throw std::invalid_argument("dominated region: sigma2 >= max(x^2, z^2)");
  const double zx = z - x, zy = z - y;
  if (s2 < std::min(x2, z2))
    return -2.0 * (s2 + x * y) * (y * z2 + s2 * zy) / (zy * zx);
  if (s2 >= z2)  // z^2 <= sigma2 < x^2
    return -2.0 * z2 * z * (s2 + x * y) / (zx * zy);
  // x^2 <= sigma2 < z^2: linear and decreasing in sigma2
  return 2.0 *
         (-s2 * (x2 * zy + y * y * zx + x * y * z) +
          x * y * z * (x * y - x * z - y * z)) /
         (zx * zy);
}

ScanResult scan_three_point(const GridSpec& spec) {
  require(spec.x_min < spec.x_max && spec.x_max < 0.0, "x range must be negative");
  require(spec.y_min < spec.y_max && spec.y_max <= 0.0, "y range must be nonpositive");
  require(spec.z_min > 0.0 && spec.z_min < spec.z_max, "z range must be positive");
  require(spec.axis_points >= 1 && spec.sigma2_points >= 1, "grid needs points");
  require(spec.margin > 0.0, "margin must be positive");

  std::optional<ThreePointConfig> best;
  double best_g = 0.0;
  std::int64_t cells = 0;

  const auto xs = linspace(spec.x_min, spec.x_max, spec.axis_points);
  const auto ys = linspace(spec.y_min, spec.y_max, spec.axis_points);
  const auto zs = linspace(spec.z_min, spec.z_max, spec.axis_points);
  for (double x : xs) {
    for (double y : ys) {
      for (double z : zs) {
        const double lo = -y * z + spec.margin;
        const double hi =
            std::min(-x * z, std::max(x * x, z * z)) - spec.margin;
        if (hi <= lo) continue;
        for (double s2 : linspace(lo, hi, spec.sigma2_points)) {
          const ThreePointConfig cfg(x, y, z, s2);
          const double g = three_point_excess(cfg);
          ++cells;
          const bool better =
              !best || g > best_g ||
              (g == best_g &&
               std::tie(x, y, z, s2) <
                   std::tie(best->x, best->y, best->z, best->sigma2));
          if (better) {
            best = cfg;
            best_g = g;
          }
        }
      }
    }
  }
  if (!best) throw std::invalid_argument("empty admissible grid");
  return {best_g, *best, cells};
}

TwoPointFamily sharpness_family(double eps) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
  TwoPointFamily fam(eps / 4.0);
  const TwoPointStats st = two_point_stats(fam.p());
  if (!(st.ratio > 1.0 - eps))
    throw std::logic_error("sharpness family failed its own ratio guarantee");
  return fam;
}

}  // namespace sqbias
