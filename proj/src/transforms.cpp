#include "sqbias/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqbias {

namespace {

constexpr double kMeanZeroTol = 1e-10;

[[noreturn]] void fail(const char* msg) { throw std::invalid_argument(msg); }

void require_nonnegative_support(const FlatLaw& f) {
  for (double a : f.atoms)
    if (a < 0.0) fail("size bias requires nonnegative nondegenerate input");
  for (const auto& p : f.pieces)
    if (p.lo < 0.0) fail("size bias requires nonnegative nondegenerate input");
}

double flat_moment(const FlatLaw& f, int n) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.atoms.size(); ++i)
    s += f.probs[i] * ipow(f.atoms[i], n);
  for (const auto& p : f.pieces) s += piece_moment(p, n);
  return s;
}

}  // namespace

Distribution size_bias(const Distribution& d) {
  const FlatLaw f = flatten(d);
  require_nonnegative_support(f);
  const double mean = flat_moment(f, 1);
  if (!(mean > 0.0)) fail("size bias requires nonnegative nondegenerate input");

  FlatLaw out;
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    if (f.atoms[i] == 0.0) continue;  // weight x/EX vanishes at the origin
    out.atoms.push_back(f.atoms[i]);
    out.probs.push_back(f.probs[i] * f.atoms[i] / mean);
  }
  for (const auto& p : f.pieces) {
    if (p.c[2] != 0.0)
      fail("size bias of a quadratic density piece leaves the degree-2 family");
    out.pieces.push_back(
        {p.lo, p.hi, {0.0, p.c[0] / mean, p.c[1] / mean}});
  }
  return from_flat(out);
}

Distribution square_bias(const Distribution& d) {
  const FlatLaw f = flatten(d);
  const double m2 = flat_moment(f, 2);
  if (!(m2 > 0.0)) fail("square bias requires a nondegenerate law");

  FlatLaw out;
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    if (f.atoms[i] == 0.0) continue;
    out.atoms.push_back(f.atoms[i]);
    out.probs.push_back(f.probs[i] * f.atoms[i] * f.atoms[i] / m2);
  }
  for (const auto& p : f.pieces) {
    if (p.c[1] != 0.0 || p.c[2] != 0.0)
      fail("square bias of a non-constant density piece leaves the degree-2 family");
    out.pieces.push_back({p.lo, p.hi, {0.0, 0.0, p.c[0] / m2}});
  }
  return from_flat(out);
}

Distribution zero_bias(const Distribution& d, double* renorm) {
  const FlatLaw f = flatten(d);
  const double mean = flat_moment(f, 1);
  if (std::abs(mean) > kMeanZeroTol) fail("zero bias requires mean zero");
  const double m2 = flat_moment(f, 2);
  if (!(m2 > 0.0)) fail("zero bias requires a nondegenerate law");
  for (const auto& p : f.pieces)
    if (p.c[1] != 0.0 || p.c[2] != 0.0)
      fail("zero bias of a non-constant density piece leaves the degree-2 family");

  // Breakpoints: atoms plus density cell endpoints.
  std::vector<double> cuts(f.atoms);
  for (const auto& p : f.pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.size() < 2) fail("zero bias requires a nondegenerate law");

  const std::size_t n = cuts.size();
  // tail[i] = E X 1(X >= cuts[i])
  std::vector<double> tail(n, 0.0);
  auto atom_at = [&](double x) -> double {
    auto it = std::lower_bound(f.atoms.begin(), f.atoms.end(), x);
    if (it != f.atoms.end() && *it == x)
      return f.probs[static_cast<std::size_t>(it - f.atoms.begin())] * x;
    return 0.0;
  };
  auto cell_density = [&](std::size_t i) -> double {
    double c = 0.0;
    for (const auto& p : f.pieces)
      if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) c += p.c[0];
    return c;
  };

  std::vector<double> cell(n - 1, 0.0);
  tail[n - 1] = atom_at(cuts[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    cell[i] = cell_density(i);
    const double seg = cell[i] * 0.5 * (cuts[i + 1] * cuts[i + 1] - cuts[i] * cuts[i]);
    tail[i] = tail[i + 1] + atom_at(cuts[i]) + seg;
  }

  // density on (cuts[i], cuts[i+1]): (tail[i+1] + c/2 (cuts[i+1]^2 - x^2)) / m2
  std::vector<PiecewiseDensity::Coeffs> coeffs(n - 1);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double c = cell[i];
    coeffs[i] = {(tail[i + 1] + 0.5 * c * cuts[i + 1] * cuts[i + 1]) / m2, 0.0,
                 -0.5 * c / m2};
    mass += piece_moment(DensityPiece{cuts[i], cuts[i + 1], coeffs[i]}, 0);
  }
  if (renorm != nullptr) *renorm = mass;
  for (auto& c : coeffs) {
    c[0] /= mass;
    c[1] /= mass;
    c[2] /= mass;
  }
  return Distribution::density(std::move(cuts), std::move(coeffs));
}

Distribution double_size_bias(const Distribution& d) {
  return size_bias(size_bias(d));
}

Distribution uniform_product_square_bias(const Distribution& d) {
  const FlatLaw f = flatten(d);
  if (!f.pieces.empty())
    fail("uniform product square bias is defined for purely atomic laws");
  const double mean = flat_moment(f, 1);
  if (std::abs(mean) > kMeanZeroTol)
    fail("uniform product square bias requires mean zero");

  const Distribution sq = square_bias(d);
  const FlatLaw fs = flatten(sq);
  std::vector<DensityPiece> pieces;
  pieces.reserve(fs.atoms.size());
  for (std::size_t i = 0; i < fs.atoms.size(); ++i) {
    const double a = std::abs(fs.atoms[i]);
    pieces.push_back({-a, a, {fs.probs[i] / (2.0 * a), 0.0, 0.0}});
  }
  MergedPieces mp = merge_pieces(pieces);
  for (auto& c : mp.coeffs) {
    c[0] /= mp.mass;
    c[1] /= mp.mass;
    c[2] /= mp.mass;
  }
  return Distribution::density(std::move(mp.breakpoints), std::move(mp.coeffs));
}

Distribution convolve(const Distribution& a, const Distribution& b) {
  const FlatLaw fa = flatten(a);
  const FlatLaw fb = flatten(b);
  const FlatLaw* atomic = fa.pieces.empty() ? &fa : (fb.pieces.empty() ? &fb : nullptr);
  if (atomic == nullptr)
    fail("convolution needs at least one purely atomic operand");
  const FlatLaw* other = (atomic == &fa) ? &fb : &fa;

  FlatLaw out;
  std::vector<std::pair<double, double>> sums;
  for (std::size_t i = 0; i < atomic->atoms.size(); ++i) {
    const double shift = atomic->atoms[i];
    const double w = atomic->probs[i];
    for (std::size_t j = 0; j < other->atoms.size(); ++j)
      sums.emplace_back(shift + other->atoms[j], w * other->probs[j]);
    for (const auto& p : other->pieces) {
      // translate the polynomial piece by `shift`
      const double c0 = p.c[0], c1 = p.c[1], c2 = p.c[2];
      out.pieces.push_back({p.lo + shift, p.hi + shift,
                            {w * (c0 - c1 * shift + c2 * shift * shift),
                             w * (c1 - 2.0 * c2 * shift), w * c2}});
    }
  }
  std::sort(sums.begin(), sums.end());
  for (const auto& [x, p] : sums) {
    if (!out.atoms.empty() && out.atoms.back() == x) {
      out.probs.back() += p;
    } else {
      out.atoms.push_back(x);
      out.probs.push_back(p);
    }
  }
  return from_flat(out);
}

Distribution zero_bias_decomposition(std::span<const Distribution> summands) {
  if (summands.empty()) fail("decomposition needs at least one summand");
  std::vector<double> variances;
  variances.reserve(summands.size());
  double total = 0.0;
  for (const auto& s : summands) {
    if (!s.purely_atomic()) fail("decomposition requires discrete summands");
    const double mean = s.moment(1);
    if (std::abs(mean) > kMeanZeroTol) fail("zero bias requires mean zero");
    const double v = s.moment(2);
    if (!(v > 0.0)) fail("decomposition requires nondegenerate summands");
    variances.push_back(v);
    total += v;
  }

  if (summands.size() == 1) return zero_bias(summands[0]);

  std::vector<WeightedComponent> comps;
  comps.reserve(summands.size());
  for (std::size_t i = 0; i < summands.size(); ++i) {
    Distribution rest = Distribution::point_mass(0.0);
    for (std::size_t j = 0; j < summands.size(); ++j)
      if (j != i) rest = convolve(rest, summands[j]);
    comps.push_back({variances[i] / total, convolve(rest, zero_bias(summands[i]))});
  }
  return Distribution::mixture(std::move(comps));
}

}  // namespace sqbias
