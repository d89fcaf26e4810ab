#pragma once

#include <cmath>
#include <utility>

namespace sqbias {

namespace detail {

inline double simpson_step(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_rec(F& f, double a, double m, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_step(a, m, fa, flm, fm);
  const double right = simpson_step(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration with interval bisection and Richardson
// correction; tol is an absolute tolerance for the whole interval.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = detail::simpson_step(a, b, fa, fm, fb);
  return detail::adaptive_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace sqbias
