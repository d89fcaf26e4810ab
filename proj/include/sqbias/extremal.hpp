#pragma once

#include <cstdint>

#include "sqbias/distribution.hpp"

namespace sqbias {

// The mean-zero variance-one laws supported on two points:
// P(X = sqrt(q/p)) = p, P(X = -sqrt(p/q)) = q = 1 - p.
class TwoPointFamily {
 public:
  explicit TwoPointFamily(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double pos_atom() const noexcept { return pos_; }
  double neg_atom() const noexcept { return neg_; }
  Distribution dist() const;

 private:
  double p_, q_, pos_, neg_;
};

// Closed forms on the two-point family:
//   third     = EX^3            = (q - p)/sqrt(pq)
//   abs_third = E|X|^3          = (p^2 + q^2)/sqrt(pq)
//   l1_square = L1(X, Xsq)      = |p - q|/sqrt(pq)
//   ratio     = l1_square/abs_third = |1 - 2p|/(1 - 2p + 2p^2)
struct TwoPointStats {
  double third;
  double abs_third;
  double l1_square;
  double ratio;
};
TwoPointStats two_point_stats(double p);

// Mean-zero three-point law with atoms x < y <= 0 < z and E X^2 = sigma2;
// admissibility requires -yz < sigma2 < -xz, which makes the derived
// probabilities p, q, r positive.
struct ThreePointConfig {
  ThreePointConfig(double x, double y, double z, double sigma2);

  double x, y, z, sigma2;
  double p, q, r;

  Distribution dist() const;
};

// The excess L1(X, Xsq) * sigma2 - E|X|^3 on a three-point law, evaluated by
// the closed case formulas (the case is selected by where sigma2 falls
// relative to x^2 and z^2). Nonpositive everywhere; the supremum 0 is
// approached only in the two-point degeneration y -> 0, sigma2 -> -yz.
double three_point_excess(const ThreePointConfig& cfg);

struct GridSpec {
  double x_min = -5.0, x_max = -0.1;
  double y_min = -3.0, y_max = 0.0;
  double z_min = 0.1, z_max = 5.0;
  int axis_points = 20;
  int sigma2_points = 20;
  double margin = 1e-6;  // keeps sigma2 strictly inside the open interval
};

struct ScanResult {
  double max_g;
  ThreePointConfig argmax;
  std::int64_t cells;
};

// Grid maximum of three_point_excess over the admissible region; ties are
// broken lexicographically on (x, y, z, sigma2).
ScanResult scan_three_point(const GridSpec& spec = {});

// A two-point law with L1(X, Xsq) > (1 - eps) E|X|^3: p = eps/4 (any
// p < eps/2 works; the extra margin absorbs floating-point error).
TwoPointFamily sharpness_family(double eps);

}  // namespace sqbias
