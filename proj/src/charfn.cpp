#include "sqbias/charfn.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sqbias {

namespace {

using cplx = std::complex<double>;

constexpr double kMeanZeroTol = 1e-10;

// mu[n] = integral over [-1, 1] of s^n e^{i theta s} ds for n = 0..4.
// Series below |theta| = 0.5 (forward recurrence cancels there), closed
// recurrence otherwise.
void mu_values(double theta, std::array<cplx, 5>& mu) {
  if (std::abs(theta) < 0.5) {
    mu.fill(cplx(0.0, 0.0));
    const cplx it(0.0, theta);
    cplx term(1.0, 0.0);  // (i theta)^k / k!
    for (int k = 0; k <= 30; ++k) {
      if (k > 0) term *= it / static_cast<double>(k);
      for (int n = 0; n <= 4; ++n)
        if (((n + k) & 1) == 0) mu[n] += term * (2.0 / (n + k + 1));
      if (std::abs(term) < 1e-24) break;
    }
    return;
  }
  const cplx eip = std::polar(1.0, theta);
  const cplx ein = std::conj(eip);
  const cplx inv_it = 1.0 / cplx(0.0, theta);
  mu[0] = 2.0 * std::sin(theta) / theta;
  for (int n = 1; n <= 4; ++n) {
    const cplx boundary = (n % 2 == 0) ? (eip - ein) : (eip + ein);
    mu[n] = boundary * inv_it - static_cast<double>(n) * inv_it * mu[n - 1];
  }
}

// Integrals of x^m * density(x) * e^{itx} over one cell, m = 0, 1, 2.
// Evaluated in the coordinate centered on the cell so no large powers of the
// absolute position enter the oscillatory part.
std::array<cplx, 3> piece_cf(const DensityPiece& p, double t) {
  const double c = 0.5 * (p.lo + p.hi);
  const double h = 0.5 * (p.hi - p.lo);
  // density in centered coordinate s in [-1, 1]
  const double e0 = p.c[0] + p.c[1] * c + p.c[2] * c * c;
  const double e1 = (p.c[1] + 2.0 * p.c[2] * c) * h;
  const double e2 = p.c[2] * h * h;

  std::array<std::array<double, 5>, 3> poly{};  // coefficients in s of x^m * density
  poly[0] = {e0, e1, e2, 0.0, 0.0};
  for (int m = 1; m <= 2; ++m) {
    // multiply by x = c + h s
    for (int k = 0; k < 5; ++k) poly[m][k] = c * poly[m - 1][k];
    for (int k = 4; k >= 1; --k) poly[m][k] += h * poly[m - 1][k - 1];
  }

  std::array<cplx, 5> mu;
  mu_values(t * h, mu);
  const cplx phase = std::polar(h, t * c);  // h * e^{itc}
  std::array<cplx, 3> out{};
  for (int m = 0; m <= 2; ++m) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < 5; ++k) s += poly[m][k] * mu[k];
    out[m] = phase * s;
  }
  return out;
}

}  // namespace

CharFnTriple cf_eval(const Distribution& d, double t) {
  const FlatLaw f = flatten(d);
  cplx m0(0.0, 0.0), m1(0.0, 0.0), m2(0.0, 0.0);  // integrals of x^m e^{itx}
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    const double a = f.atoms[i];
    const cplx e = std::polar(f.probs[i], t * a);
    m0 += e;
    m1 += a * e;
    m2 += a * a * e;
  }
  for (const auto& p : f.pieces) {
    const auto pc = piece_cf(p, t);
    m0 += pc[0];
    m1 += pc[1];
    m2 += pc[2];
  }
  return {m0, cplx(0.0, 1.0) * m1, -m2};
}

std::complex<double> cf_size_bias(const Distribution& d, double t) {
  const FlatLaw f = flatten(d);
  for (double a : f.atoms)
    if (a < 0.0)
      throw std::invalid_argument("size bias requires nonnegative nondegenerate input");
  for (const auto& p : f.pieces)
    if (p.lo < 0.0)
      throw std::invalid_argument("size bias requires nonnegative nondegenerate input");
  const double mean = d.moment(1);
  if (!(mean > 0.0))
    throw std::invalid_argument("size bias requires nonnegative nondegenerate input");
  return cf_eval(d, t).fprime / (cplx(0.0, 1.0) * mean);
}

std::complex<double> cf_zero_bias(const Distribution& d, double t) {
  const double mean = d.moment(1);
  if (std::abs(mean) > kMeanZeroTol)
    throw std::invalid_argument("zero bias requires mean zero");
  const double m2 = d.moment(2);
  if (!(m2 > 0.0))
    throw std::invalid_argument("zero bias requires a nondegenerate law");

  const auto [lo, hi] = d.support();
  const double radius = std::max(std::abs(lo), std::abs(hi));
  if (std::abs(t) * radius < 0.5) {
    // -f'(t)/(m2 t) via the moment series of f', with the residual EX folded
    // away: sum over k >= 1 of i^{k+1} E X^{k+1} t^{k-1} / k!
    cplx acc(0.0, 0.0);
    double tpow = 1.0;    // t^{k-1}
    double kfact = 1.0;   // k!
    double tail = radius * radius;  // bound M^{k+1} |t|^{k-1} / k!
    for (int k = 1; k <= 40; ++k) {
      kfact *= k;
      const double mk = d.moment(k + 1);
      const double coeff = mk * tpow / kfact;
      cplx ik;
      switch ((k + 1) & 3) {
        case 0: ik = cplx(1.0, 0.0); break;
        case 1: ik = cplx(0.0, 1.0); break;
        case 2: ik = cplx(-1.0, 0.0); break;
        default: ik = cplx(0.0, -1.0); break;
      }
      acc += ik * coeff;
      tpow *= t;
      tail *= std::abs(t) * radius / (k + 1);
      if (tail < 1e-22) break;
    }
    return -acc / m2;
  }
  return -cf_eval(d, t).fprime / (m2 * t);
}

std::complex<double> cf_square_bias(const Distribution& d, double t) {
  const double m2 = d.moment(2);
  if (!(m2 > 0.0))
    throw std::invalid_argument("square bias requires a nondegenerate law");
  return -cf_eval(d, t).fsecond / m2;
}

void require_standardized(const Distribution& d) {
  if (std::abs(d.moment(1)) > kMeanZeroTol ||
      std::abs(d.moment(2) - 1.0) > kMeanZeroTol)
    throw std::invalid_argument("operation requires a standardized law (mean 0, variance 1)");
}

double normal_discrepancy(const Distribution& d, double t) {
  require_standardized(d);
  return std::abs(cf_eval(d, t).f - std::exp(-0.5 * t * t));
}

}  // namespace sqbias
