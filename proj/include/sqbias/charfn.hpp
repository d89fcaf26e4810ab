#pragma once

#include <complex>

#include "sqbias/distribution.hpp"

namespace sqbias {

// f(t) = E e^{itX} together with its first two derivatives at the same t.
// At t = 0 the triple is (1, i EX, -EX^2), and |f| <= 1 everywhere.
struct CharFnTriple {
  std::complex<double> f;
  std::complex<double> fprime;
  std::complex<double> fsecond;
};

// Exact evaluation: finite sums for atoms, closed-form oscillatory moment
// integrals for polynomial density cells (series expansion near t = 0 to
// avoid cancellation).
CharFnTriple cf_eval(const Distribution& d, double t);

// f'(t)/f'(0) for a nonnegative law with EX > 0.
std::complex<double> cf_size_bias(const Distribution& d, double t);

// -f'(t)/(EX^2 t) for a mean-zero law; the removable singularity at t = 0 is
// filled by a moment series.
std::complex<double> cf_zero_bias(const Distribution& d, double t);

// -f''(t)/EX^2.
std::complex<double> cf_square_bias(const Distribution& d, double t);

// |f(t) - e^{-t^2/2}| for a standardized law.
double normal_discrepancy(const Distribution& d, double t);

// Throws unless |EX| <= 1e-10 and |EX^2 - 1| <= 1e-10.
void require_standardized(const Distribution& d);

}  // namespace sqbias
