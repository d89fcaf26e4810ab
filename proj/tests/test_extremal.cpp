#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sqbias/distribution.hpp"
#include "sqbias/extremal.hpp"
#include "sqbias/lawgen.hpp"
#include "sqbias/metrics.hpp"
#include "sqbias/transforms.hpp"
#include "test_helpers.hpp"

using namespace sqbias;
using sqbias::testing::near;

namespace {

// the defining route: L1(X, Xsq) * sigma2 - E|X|^3 on the actual law
double excess_by_definition(const ThreePointConfig& cfg) {
  const Distribution d = cfg.dist();
  return l1_distance(d, square_bias(d)) * cfg.sigma2 - d.abs_moment(3.0);
}

// random admissible configuration
ThreePointConfig random_config(SplitMix64& rng) {
  for (;;) {
    const double x = rng.uniform(-5.0, -0.1);
    const double y = x * rng.uniform(0.0, 0.6);  // inside (x, 0]
    const double z = rng.uniform(0.1, 5.0);
    const double lo = -y * z + 1e-6;
    const double hi = std::min(-x * z, std::max(x * x, z * z)) - 1e-6;
    if (hi <= lo) continue;
    return ThreePointConfig(x, y, z, rng.uniform(lo, hi));
  }
}

}  // namespace

TEST_CASE("two-point family construction") {
  const TwoPointFamily f(0.1);
  CHECK(near(f.pos_atom(), 3.0, 1e-15));
  CHECK(near(f.neg_atom(), -1.0 / 3.0, 1e-15));
  const MomentSet m = f.dist().moments();
  CHECK(near(m.mean, 0.0, 1e-15));
  CHECK(near(m.second, 1.0, 1e-15));
  CHECK_THROWS_AS(TwoPointFamily(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoPointFamily(1.0), std::invalid_argument);
}

TEST_CASE("two-point closed forms") {
  const TwoPointStats mid = two_point_stats(0.5);
  CHECK(mid.third == 0.0);
  CHECK(mid.abs_third == 1.0);
  CHECK(mid.l1_square == 0.0);
  CHECK(mid.ratio == 0.0);

  const TwoPointStats s = two_point_stats(0.1);
  CHECK(near(s.third, 8.0 / 3.0, 1e-14));
  CHECK(near(s.abs_third, 41.0 / 15.0, 1e-14));
  CHECK(near(s.l1_square, 8.0 / 3.0, 1e-14));
  CHECK(near(s.ratio, 40.0 / 41.0, 1e-15));

  CHECK(two_point_stats(0.005).ratio >= 1.0 - 2.0 * 0.005);

  // closed forms agree with the metric route
  for (double p : {0.05, 0.3, 0.5, 0.77, 0.95}) {
    const Distribution d = TwoPointFamily(p).dist();
    CHECK(near(l1_distance(d, square_bias(d)), two_point_stats(p).l1_square,
               1e-12));
  }
}

TEST_CASE("three-point configuration parametrization") {
  const ThreePointConfig cfg(-2.0, -0.5, 1.0, 1.0);
  CHECK(near(cfg.p, 1.0 / 9.0, 1e-15));
  CHECK(near(cfg.q, 4.0 / 9.0, 1e-15));
  CHECK(near(cfg.r, 4.0 / 9.0, 1e-15));
  const MomentSet m = cfg.dist().moments();
  CHECK(near(m.mean, 0.0, 1e-15));
  CHECK(near(m.second, cfg.sigma2, 1e-15));

  CHECK_THROWS_AS(ThreePointConfig(-2.0, -0.5, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(ThreePointConfig(-2.0, -0.5, 1.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(ThreePointConfig(-0.5, -2.0, 1.0, 1.0), std::invalid_argument);

  SplitMix64 rng(83);
  for (int i = 0; i < 200; ++i) {
    const ThreePointConfig c = random_config(rng);
    CHECK(c.p > 0.0);
    CHECK(c.q > 0.0);
    CHECK(c.r > 0.0);
    CHECK(near(c.p + c.q + c.r, 1.0, 1e-12));
    const MomentSet mm = c.dist().moments();
    CHECK(near(mm.mean, 0.0, 1e-12));
    CHECK(near(mm.second, c.sigma2, 1e-12));
  }
}

TEST_CASE("three-point excess worked example") {
  // sigma2 = 1 lands in the z^2 <= sigma2 < x^2 case; value -2 r z^3 = -8/9
  const ThreePointConfig cfg(-2.0, -0.5, 1.0, 1.0);
  CHECK(near(three_point_excess(cfg), -8.0 / 9.0, 1e-14));
  CHECK(near(excess_by_definition(cfg), -8.0 / 9.0, 1e-13));
}

TEST_CASE("case formulas agree with the defining route") {
  SplitMix64 rng(89);
  for (int i = 0; i < 1000; ++i) {
    const ThreePointConfig cfg = random_config(rng);
    const double lhs = three_point_excess(cfg);
    const double rhs = excess_by_definition(cfg);
    CHECK(near(lhs, rhs, 1e-10));
    CHECK(lhs <= 1e-12);  // the supremum over the region is 0
  }
}

TEST_CASE("parabola vertex of the first case stays left of the boundary") {
  SplitMix64 rng(97);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-5.0, -0.1);
    const double y = x * rng.uniform(1e-6, 0.999);
    const double z = rng.uniform(0.1, 5.0);
    const double vertex = -y * (z * z + x * z - x * y) / (2.0 * (z - y));
    CHECK(vertex + y * z <= 1e-12);
  }
}

TEST_CASE("third case is strictly decreasing in sigma2") {
  SplitMix64 rng(103);
  int tested = 0;
  while (tested < 300) {
    const double x = rng.uniform(-3.0, -0.2);
    const double y = x * rng.uniform(0.0, 0.6);
    const double z = rng.uniform(0.3, 5.0);
    const double lo = std::max(x * x, -y * z + 1e-9);
    const double hi = std::min(z * z, -x * z) - 1e-9;
    if (hi <= lo + 1e-9) continue;
    const double s1 = rng.uniform(lo, hi);
    const double s2 = rng.uniform(lo, hi);
    if (std::abs(s1 - s2) < 1e-9) continue;
    const double g1 = three_point_excess(ThreePointConfig(x, y, z, std::min(s1, s2)));
    const double g2 = three_point_excess(ThreePointConfig(x, y, z, std::max(s1, s2)));
    CHECK(g2 < g1);
    ++tested;
  }
}

TEST_CASE("y-derivative in the third case at sigma2 = x^2 is negative") {
  // sigma2 = x^2 is admissible inside the x^2 <= sigma2 < z^2 case only when
  // |x| < z, and there the closed derivative is strictly negative
  SplitMix64 rng(107);
  int tested = 0;
  while (tested < 200) {
    const double z = rng.uniform(0.5, 5.0);
    const double x = -z * rng.uniform(0.2, 0.95);  // -z < x < 0
    const double y = x * rng.uniform(0.01, 0.5);
    const double s2 = x * x;
    // admissibility at sigma2 = x^2 needs -yz < x^2 < -xz
    if (!(-y * z < s2 - 1e-9 && s2 < -x * z - 1e-9)) continue;
    const double h = 1e-6;
    if (!(-(y + h) * z < s2 && x < y - h && y + h <= 0.0)) continue;
    const double gp = three_point_excess(ThreePointConfig(x, y + h, z, s2));
    const double gm = three_point_excess(ThreePointConfig(x, y - h, z, s2));
    const double fd = (gp - gm) / (2.0 * h);
    // closed form of the derivative in y
    const double closed = -2.0 * x * (x + z) *
                          (y * z * (2.0 * z - y) + x * (z - y) * (z - y)) /
                          ((z - x) * (z - y) * (z - y));
    CHECK(fd < 0.0);
    CHECK(closed < 0.0);
    CHECK(near(fd / closed, 1.0, 1e-3));
    ++tested;
  }
}

TEST_CASE("grid scan stays nonpositive and degenerates toward two points") {
  GridSpec spec;
  spec.axis_points = 8;
  spec.sigma2_points = 8;
  const ScanResult scan = scan_three_point(spec);
  CHECK(scan.max_g <= 1e-9);
  CHECK(std::abs(scan.argmax.y) <= 0.5);
  CHECK(std::abs(scan.argmax.sigma2 + scan.argmax.y * scan.argmax.z) <= 1e-3);
  CHECK(scan.cells > 1000);

  // single-point grid at the worked example
  GridSpec single;
  single.x_min = -2.0;
  single.x_max = -2.0 + 1e-12;
  single.y_min = -0.5;
  single.y_max = -0.5 + 1e-13;
  single.z_min = 1.0;
  single.z_max = 1.0 + 1e-12;
  single.axis_points = 1;
  single.sigma2_points = 1;
  single.margin = 0.5;  // sigma2 range (0.5, 2) collapses to 1 with margin 0.5
  const ScanResult one = scan_three_point(single);
  CHECK(near(one.max_g, -8.0 / 9.0, 1e-9));

  // a grid confined to the z^2 <= sigma2 < x^2 case stays strictly negative
  GridSpec caseb;
  caseb.x_min = -5.0;
  caseb.x_max = -2.5;
  caseb.y_min = -2.4;  // |y| >= z keeps every sigma2 sample at or above z^2
  caseb.y_max = -1.0;
  caseb.z_min = 0.3;
  caseb.z_max = 0.9;
  caseb.axis_points = 6;
  caseb.sigma2_points = 6;
  const ScanResult sb = scan_three_point(caseb);
  CHECK(sb.max_g < 0.0);

  GridSpec empty;
  empty.z_min = 1e-3;
  empty.z_max = 2e-3;
  empty.x_min = -1e-2;
  empty.x_max = -9e-3;
  empty.y_min = -1e-3;
  empty.y_max = 0.0;
  empty.axis_points = 2;
  empty.sigma2_points = 2;
  empty.margin = 1.0;  // margin swallows every admissible interval
  CHECK_THROWS_AS(scan_three_point(empty), std::invalid_argument);
}

TEST_CASE("sharpness family") {
  const TwoPointFamily f1 = sharpness_family(0.5);
  CHECK(near(f1.p(), 0.125, 1e-15));
  const TwoPointStats s1 = two_point_stats(f1.p());
  CHECK(near(s1.ratio, 0.96, 1e-12));
  CHECK(s1.ratio > 0.5);

  const TwoPointFamily f2 = sharpness_family(0.01);
  CHECK(two_point_stats(f2.p()).ratio > 0.99);

  const TwoPointFamily f3 = sharpness_family(0.999999);
  CHECK(two_point_stats(f3.p()).ratio > 0.0);

  CHECK_THROWS_AS(sharpness_family(0.0), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_family(1.0), std::invalid_argument);
}

TEST_CASE("square-bias distance never exceeds the third absolute moment") {
  SplitMix64 rng(109);
  for (int i = 0; i < 500; ++i) {
    const Distribution d = random_standardized_law(rng);
    CHECK(l1_distance(d, square_bias(d)) <= d.abs_moment(3.0) + 1e-9);
  }
}
