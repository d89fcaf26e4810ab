#pragma once

#include "sqbias/distribution.hpp"

namespace sqbias {

// L1 / Wasserstein-1 distance computed as the mean metric: the integral of
// |P(X < u) - P(Y < u)| du. Exact: the CDF difference is piecewise polynomial
// of degree <= 3 on the merged breakpoint grid; sign changes are located by
// closed-form root finding and each signed piece is integrated analytically.
double l1_distance(const Distribution& a, const Distribution& b);

// 2 sin(min(|t| l1 / 2, pi/2)): the smoothing bound turning an L1 distance
// into a bound on the characteristic-function difference at t.
double cf_distance_bound(double l1, double t);

}  // namespace sqbias
