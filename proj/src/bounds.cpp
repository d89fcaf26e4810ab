#include "sqbias/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sqbias/charfn.hpp"
#include "sqbias/quadrature.hpp"

namespace sqbias {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta3(double beta3) {
  if (!(beta3 >= 1.0 - 1e-12))
    throw std::invalid_argument("beta3 must be at least 1 for standardized laws");
}

double clamped_sin(double x) { return std::sin(std::min(x, kPi / 2.0)); }

// exp(t^2/2) capped so tolerance scaling cannot overflow
double exp_half_sq(double t) { return std::exp(std::min(0.5 * t * t, 700.0)); }

// integrate f over [a, b] splitting at the listed kink locations
template <typename F>
double integrate_split(F&& f, double a, double b, std::vector<double> splits,
                       double tol) {
  splits.push_back(a);
  splits.push_back(b);
  std::sort(splits.begin(), splits.end());
  double total = 0.0;
  double prev = a;
  for (double s : splits) {
    if (s <= prev || s > b) continue;
    total += adaptive_simpson(f, prev, s, tol);
    prev = s;
  }
  return total;
}

double once_integrand(double beta3, double u) {
  return clamped_sin(beta3 * u / 4.0) * u * std::exp(0.5 * u * u);
}

// closed form of integral_0^u sin(min(beta3 s / 2, pi/2)) ds
double clamped_sin_integral_half(double beta3, double u) {
  const double kink = kPi / beta3;
  if (u <= kink) return (2.0 / beta3) * (1.0 - std::cos(0.5 * beta3 * u));
  return 2.0 / beta3 + (u - kink);
}

double a_term(double beta3, double u) {
  return 2.0 * clamped_sin_integral_half(beta3, u) + u * u * u / 3.0;
}

double b_integrand(double beta3, double s) {
  return (2.0 * clamped_sin(0.5 * beta3 * s) +
          2.0 * s * s * clamped_sin(0.25 * beta3 * s) + s * s) *
         std::exp(0.5 * s * s);
}

// Cumulative integral from 0 with a monotonically growing evaluation cache;
// the per-gap tolerance is loosened by exp(u^2/2) to match the e^{-t^2/2}
// factor applied to the final bound.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<double(double)> f, std::vector<double> splits,
                     double tol)
      : f_(std::move(f)), splits_(std::move(splits)), tol_(tol) {
    known_[0.0] = 0.0;
  }

  double operator()(double u) {
    auto it = known_.upper_bound(u);
    --it;  // greatest cached point <= u (0 is always present)
    if (it->first == u) return it->second;
    const double base_u = it->first;
    const double base_v = it->second;
    const double gap_tol = tol_ * exp_half_sq(base_u);
    const double v =
        base_v + integrate_split(f_, base_u, u, splits_, gap_tol);
    known_[u] = v;
    return v;
  }

 private:
  std::function<double(double)> f_;
  std::vector<double> splits_;
  double tol_;
  std::map<double, double> known_;
};

}  // namespace

double cf_square_gap_bound(double beta3, double t) {
  check_beta3(beta3);
  return 2.0 * clamped_sin(0.5 * beta3 * std::abs(t));
}

double once_integrated_bound(double beta3, double t, double tol) {
  check_beta3(beta3);
  const double T = std::abs(t);
  if (T == 0.0) return 0.0;
  const auto f = [beta3](double u) { return once_integrand(beta3, u); };
  const double integral =
      integrate_split(f, 0.0, T, {2.0 * kPi / beta3}, tol * exp_half_sq(T));
  return 2.0 * std::exp(-0.5 * T * T) * integral;
}

double twice_integrated_bound(double beta3, double t, double inner_tol,
                              double outer_tol) {
  check_beta3(beta3);
  const double T = std::abs(t);
  if (T == 0.0) return 0.0;
  const std::vector<double> kinks{kPi / beta3, 2.0 * kPi / beta3};
  const double inner_scaled = inner_tol * exp_half_sq(T);
  const auto b_term = [&](double u) {
    const auto f = [beta3](double s) { return b_integrand(beta3, s); };
    return integrate_split(f, 0.0, u, kinks, inner_scaled);
  };
  const auto outer = [&](double u) {
    return std::min(a_term(beta3, u) * std::exp(0.5 * u * u), b_term(u));
  };
  const double integral =
      integrate_split(outer, 0.0, T, kinks, outer_tol * exp_half_sq(T));
  return std::exp(-0.5 * T * T) * integral;
}

double twice_integrated_bound_completed(double beta3, double t,
                                        double inner_tol, double outer_tol) {
  check_beta3(beta3);
  const double T = std::abs(t);
  if (T == 0.0) return 0.0;
  const std::vector<double> kinks{kPi / beta3, 2.0 * kPi / beta3};
  const auto route_a = [&](double u) {
    return a_term(beta3, u) * std::exp(0.5 * u * u);
  };
  const double ia =
      integrate_split(route_a, 0.0, T, kinks, outer_tol * exp_half_sq(T));
  // iterated integral of b: integral_0^T B(u) du = integral_0^T (T - s) b(s) ds
  const auto route_b = [&](double s) { return (T - s) * b_integrand(beta3, s); };
  const double ib = integrate_split(route_b, 0.0, T, kinks,
                                    std::max(inner_tol, outer_tol) * exp_half_sq(T));
  return std::exp(-0.5 * T * T) * std::min(ia, ib);
}

LeadingTerms compare_leading_terms(double beta3, double t) {
  check_beta3(beta3);
  if (t < 0.0 || beta3 * t > kPi * (1.0 + 1e-12))
    throw std::invalid_argument("outside stated regime: need 0 <= beta3*t <= pi");
  const double x2 = 0.5 * beta3 * t;
  const double x4 = 0.25 * beta3 * t;
  const double inv = 1.0 / (beta3 * beta3);
  return {8.0 * inv * (x2 - std::sin(x2)),
          32.0 * inv * (std::sin(x4) - x4 * std::cos(x4))};
}

CfGapDiagnostics cf_gap_diagnostics(const Distribution& d, double s) {
  require_standardized(d);
  const CharFnTriple trip = cf_eval(d, s);
  return {std::abs(trip.f + trip.fsecond), std::abs(s) * std::abs(trip.fprime),
          s * s * std::abs(trip.f - cf_zero_bias(d, s))};
}

double BoundCurve::min_slack() const {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    m = std::min(m, eq9[i] - r[i]);
    m = std::min(m, cor2[i] - r[i]);
    m = std::min(m, power[i] - r[i]);
    m = std::min(m, cor1[i] - g1[i]);
  }
  return m;
}

BoundCurve bound_curve(const Distribution& d, double t_max, int steps,
                       bool with_completed) {
  require_standardized(d);
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  const double beta3 = d.abs_moment(3.0);
  check_beta3(beta3);

  const std::vector<double> kinks{kPi / beta3, 2.0 * kPi / beta3};
  CumulativeIntegral once_int(
      [beta3](double u) { return once_integrand(beta3, u); },
      {2.0 * kPi / beta3}, 1e-13);
  CumulativeIntegral b_int([beta3](double s) { return b_integrand(beta3, s); },
                           kinks, 1e-14);
  CumulativeIntegral twice_int(
      [&](double u) {
        return std::min(a_term(beta3, u) * std::exp(0.5 * u * u), b_int(u));
      },
      kinks, 1e-13);

  BoundCurve curve;
  for (int k = 0; k <= steps; ++k) {
    const double t = t_max * k / steps;
    const CharFnTriple trip = cf_eval(d, t);
    const double decay = std::exp(-0.5 * t * t);
    curve.t.push_back(t);
    curve.r.push_back(std::abs(trip.f - decay));
    curve.g1.push_back(std::abs(trip.f + trip.fsecond));
    curve.power.push_back(beta3 * t * t * t / 6.0);
    curve.eq9.push_back(t == 0.0 ? 0.0 : 2.0 * decay * once_int(t));
    curve.cor2.push_back(t == 0.0 ? 0.0 : decay * twice_int(t));
    curve.cor1.push_back(cf_square_gap_bound(beta3, t));
    if (with_completed)
      curve.cor2_completed.push_back(
          t == 0.0 ? 0.0 : twice_integrated_bound_completed(beta3, t));
  }
  return curve;
}

void write_csv(const BoundCurve& curve, std::ostream& os) {
  const bool completed = !curve.cor2_completed.empty();
  os << "t,r,power,eq9,cor2,g1,cor1";
  if (completed) os << ",cor2_completed";
  os << "\n";
  char buf[32];
  const auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << sep;
  };
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    put(curve.t[i], ',');
    put(curve.r[i], ',');
    put(curve.power[i], ',');
    put(curve.eq9[i], ',');
    put(curve.cor2[i], ',');
    put(curve.g1[i], ',');
    put(curve.cor1[i], completed ? ',' : '\n');
    if (completed) put(curve.cor2_completed[i], '\n');
  }
}

}  // namespace sqbias
