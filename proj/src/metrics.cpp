#include "sqbias/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqbias {

namespace {

using Poly4 = std::array<double, 4>;  // c0 + c1 u + c2 u^2 + c3 u^3

double poly_eval(const Poly4& c, double u) {
  return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

double poly_deriv(const Poly4& c, double u) {
  return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1];
}

// antiderivative evaluated at u
double poly_antideriv(const Poly4& c, double u) {
  return (((c[3] / 4.0 * u + c[2] / 3.0) * u + c[1] / 2.0) * u + c[0]) * u;
}

void polish_root(const Poly4& c, double lo, double hi, double& r) {
  for (int it = 0; it < 3; ++it) {
    const double d = poly_deriv(c, r);
    if (d == 0.0) return;
    const double step = poly_eval(c, r) / d;
    const double next = r - step;
    if (next < lo || next > hi) return;
    r = next;
  }
}

// Real roots of the (at most cubic) polynomial inside (lo, hi), ascending.
// Closed-form quadratic/cubic formulas with a small discriminant guard,
// followed by Newton polishing against the full polynomial.
int roots_in_interval(const Poly4& c, double lo, double hi,
                      std::array<double, 3>& out) {
  const double w = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double scale = std::max({std::abs(c[0]), std::abs(c[1]) * w,
                                 std::abs(c[2]) * w * w,
                                 std::abs(c[3]) * w * w * w});
  if (scale == 0.0) return 0;  // identically zero piece
  const double guard = 1e-14 * scale;

  std::array<double, 3> cand{};
  int n = 0;
  if (std::abs(c[3]) * w * w * w > guard) {
    // depressed cubic y^3 + p y + q with u = y - c2/(3 c3)
    const double a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
    const double sh = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0.0) {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      double arg = 3.0 * q / (p * m);
      arg = std::clamp(arg, -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k)
        cand[n++] = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - sh;
    } else {
      const double rad = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
      const double u = std::cbrt(-q / 2.0 + rad);
      const double v = std::cbrt(-q / 2.0 - rad);
      cand[n++] = u + v - sh;
      if (disc >= -1e-14 * std::max(1.0, p * p * p + q * q)) {
        // borderline triple/double root territory
        cand[n++] = -0.5 * (u + v) - sh;
      }
    }
  } else if (std::abs(c[2]) * w * w > guard) {
    const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
    const double dguard = 1e-14 * std::max({c[1] * c[1], std::abs(4.0 * c[2] * c[0]), 1e-300});
    if (disc >= -dguard) {
      const double sd = std::sqrt(std::max(0.0, disc));
      const double qq = -0.5 * (c[1] + std::copysign(sd, c[1]));
      if (qq != 0.0) cand[n++] = c[0] / qq;
      cand[n++] = (c[1] == 0.0 && c[0] == 0.0) ? 0.0 : qq / c[2];
    }
  } else if (std::abs(c[1]) * w > guard) {
    cand[n++] = -c[0] / c[1];
  } else {
    return 0;  // constant piece, no interior sign change
  }

  std::array<double, 3> roots{};
  int m = 0;
  for (int i = 0; i < n; ++i) {
    double r = cand[i];
    if (!std::isfinite(r)) continue;
    polish_root(c, lo, hi, r);
    if (r <= lo || r >= hi) continue;
    bool dup = false;
    for (int j = 0; j < m; ++j)
      if (std::abs(roots[j] - r) <= 1e-13 * w) dup = true;
    if (!dup) roots[m++] = r;
  }
  std::sort(roots.begin(), roots.begin() + m);
  for (int i = 0; i < m; ++i) out[i] = roots[i];
  return m;
}

double integrate_abs(const Poly4& c, double lo, double hi) {
  std::array<double, 3> roots{};
  const int n = roots_in_interval(c, lo, hi, roots);
  double total = 0.0;
  double left = lo;
  for (int i = 0; i <= n; ++i) {
    const double right = (i == n) ? hi : roots[i];
    total += std::abs(poly_antideriv(c, right) - poly_antideriv(c, left));
    left = right;
  }
  return total;
}

// CDF of a flattened law as one cubic polynomial per grid interval. The grid
// must contain every atom and cell endpoint of the law.
std::vector<Poly4> cdf_polys(const FlatLaw& f, const std::vector<double>& xs) {
  std::vector<Poly4> out(xs.size() - 1, Poly4{0.0, 0.0, 0.0, 0.0});
  double running = 0.0;       // F just right of the current breakpoint
  std::size_t next_atom = 0;  // first atom not yet absorbed into `running`
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    while (next_atom < f.atoms.size() && f.atoms[next_atom] <= xs[i])
      running += f.probs[next_atom++];
    Poly4 c{running, 0.0, 0.0, 0.0};
    double added = 0.0;
    for (const auto& p : f.pieces) {
      if (p.lo <= xs[i] && xs[i + 1] <= p.hi) {
        // add antiderivative of the density, anchored at xs[i]
        c[1] += p.c[0];
        c[2] += p.c[1] / 2.0;
        c[3] += p.c[2] / 3.0;
        const auto anti = [&](double u) {
          return (((p.c[2] / 3.0) * u + p.c[1] / 2.0) * u + p.c[0]) * u;
        };
        c[0] -= anti(xs[i]);
        added += anti(xs[i + 1]) - anti(xs[i]);
      }
    }
    out[i] = c;
    running += added;
  }
  return out;
}

}  // namespace

double l1_distance(const Distribution& a, const Distribution& b) {
  const FlatLaw fa = flatten(a);
  const FlatLaw fb = flatten(b);

  std::vector<double> xs;
  for (const FlatLaw* f : {&fa, &fb}) {
    xs.insert(xs.end(), f->atoms.begin(), f->atoms.end());
    for (const auto& p : f->pieces) {
      xs.push_back(p.lo);
      xs.push_back(p.hi);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) return 0.0;

  const auto pa = cdf_polys(fa, xs);
  const auto pb = cdf_polys(fb, xs);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Poly4 d;
    for (int k = 0; k < 4; ++k) d[k] = pa[i][k] - pb[i][k];
    total += integrate_abs(d, xs[i], xs[i + 1]);
  }
  return total;
}

double cf_distance_bound(double l1, double t) {
  if (!(l1 >= 0.0))
    throw std::invalid_argument("cf distance bound needs l1 >= 0");
  return 2.0 * std::sin(std::min(0.5 * std::abs(t) * l1, std::numbers::pi / 2.0));
}

}  // namespace sqbias
