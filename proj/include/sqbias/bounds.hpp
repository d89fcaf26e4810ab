#pragma once

#include <iosfwd>
#include <vector>

#include "sqbias/distribution.hpp"

namespace sqbias {

// 2 sin(min(beta3 |t| / 2, pi/2)): bound on |f(t) + f''(t)|, the gap between
// the characteristic functions of a standardized law and its square-bias
// transform. beta3 below 1 is rejected: standardized laws always satisfy
// beta3 >= 1, so a smaller value signals an upstream bug.
double cf_square_gap_bound(double beta3, double t);

// Once-integrated estimate of |f(t) - e^{-t^2/2}|:
//   2 e^{-t^2/2} integral_0^{|t|} sin(min(beta3 u / 4, pi/2)) u e^{u^2/2} du.
double once_integrated_bound(double beta3, double t, double tol = 1e-12);

// Twice-integrated estimate of |f(t) - e^{-t^2/2}|:
//   e^{-t^2/2} integral_0^{|t|} min(A(u) e^{u^2/2}, B(u)) du
// with
//   A(u) = 2 integral_0^u sin(min(beta3 s / 2, pi/2)) ds + u^3/3
//   B(u) = integral_0^u (2 sin(min(beta3 s / 2, pi/2))
//                        + 2 s^2 sin(min(beta3 s / 4, pi/2)) + s^2) e^{s^2/2} ds.
// The minimum is taken pointwise in u; both bracketed expressions estimate
// the same integrand (f'(u) + u f(u)) e^{u^2/2}, so the pointwise form is a
// valid (and the sharper) reading.
double twice_integrated_bound(double beta3, double t, double inner_tol = 1e-13,
                              double outer_tol = 1e-12);

// Alternative reading: minimum of the two completed outer integrals. Never
// smaller than the pointwise form.
double twice_integrated_bound_completed(double beta3, double t,
                                        double inner_tol = 1e-13,
                                        double outer_tol = 1e-12);

// Small-t leading closed forms of the twice- and once-integrated estimates,
// valid for 0 <= beta3 t <= pi:
//   twice = (8/beta3^2) (beta3 t / 2 - sin(beta3 t / 2))
//   once  = (32/beta3^2) (sin(beta3 t / 4) - (beta3 t / 4) cos(beta3 t / 4))
// twice < once strictly for t > 0.
struct LeadingTerms {
  double twice;
  double once;
};
LeadingTerms compare_leading_terms(double beta3, double t);

// Diagnostic terms of the twice-integrated derivation at argument s:
//   g1 = |f(s) + f''(s)|, g2 = |s| |f'(s)|, g3 = s^2 |f(s) - fz(s)|
// where fz is the characteristic function of the zero-bias transform.
// For standardized laws g2 <= s^2 and g3 <= 2 s^2.
struct CfGapDiagnostics {
  double g1;
  double g2;
  double g3;
};
CfGapDiagnostics cf_gap_diagnostics(const Distribution& d, double s);

// One verification record: the measured discrepancies r(t) = |f - e^{-t^2/2}|
// and g1(t) alongside every applicable bound on a uniform t grid. Slack
// (bound minus measured quantity) must stay above -1e-9 everywhere.
struct BoundCurve {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> g1;
  std::vector<double> power;  // beta3 |t|^3 / 6
  std::vector<double> eq9;    // once-integrated bound
  std::vector<double> cor2;   // twice-integrated bound (pointwise minimum)
  std::vector<double> cor1;   // square-gap bound, compared against g1
  std::vector<double> cor2_completed;  // filled only on request

  double min_slack() const;
};

BoundCurve bound_curve(const Distribution& d, double t_max, int steps,
                       bool with_completed = false);

// CSV with header t,r,power,eq9,cor2,g1,cor1 (plus cor2_completed when
// present), 17 significant digits per value.
void write_csv(const BoundCurve& curve, std::ostream& os);

}  // namespace sqbias
