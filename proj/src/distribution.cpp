#include "sqbias/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqbias {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool finite(double x) { return std::isfinite(x); }

// |x|^r, taking the exact integer-power path when possible.
double rpow(double x, double r) {
  const double ri = std::floor(r);
  if (ri == r && ri >= 0.0 && ri <= 64.0) return ipow(x, static_cast<int>(ri));
  return std::pow(x, r);
}

int mixture_depth(const Distribution& d) {
  const auto* m = d.as_mixture();
  if (m == nullptr) return 0;
  int deepest = 0;
  for (const auto& c : m->components())
    deepest = std::max(deepest, mixture_depth(c.dist));
  return deepest + 1;
}

}  // namespace

double ipow(double x, int n) {
  double r = 1.0;
  double b = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

DiscreteDist::DiscreteDist(std::vector<double> atoms, std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)) {
  require(!atoms_.empty(), "discrete law needs at least one atom");
  require(atoms_.size() == probs_.size(), "atoms and probs must have equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    require(finite(atoms_[i]) && finite(probs_[i]), "atoms and probs must be finite");
    require(probs_[i] > 0.0, "every prob must be positive");
    require(i == 0 || atoms_[i - 1] < atoms_[i], "atoms must be strictly increasing");
    sum += probs_[i];
  }
  require(std::abs(sum - 1.0) <= kMassTol, "probs must sum to 1");
}

PiecewiseDensity::PiecewiseDensity(std::vector<double> breakpoints,
                                   std::vector<Coeffs> coeffs)
    : breakpoints_(std::move(breakpoints)), coeffs_(std::move(coeffs)) {
  require(breakpoints_.size() >= 2, "density needs at least one piece");
  require(breakpoints_.size() == coeffs_.size() + 1,
          "breakpoints must have one more entry than coeffs");
  for (double b : breakpoints_) require(finite(b), "breakpoints must be finite");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    require(breakpoints_[i] < breakpoints_[i + 1],
            "breakpoints must be strictly increasing");

  constexpr double kNegTol = -1e-12;
  double integral = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    require(finite(c[0]) && finite(c[1]) && finite(c[2]), "coeffs must be finite");
    const double a = breakpoints_[i], b = breakpoints_[i + 1];
    const auto val = [&](double x) { return c[0] + c[1] * x + c[2] * x * x; };
    require(val(a) >= kNegTol && val(b) >= kNegTol, "density must be nonnegative");
    if (c[2] != 0.0) {
      const double xs = -c[1] / (2.0 * c[2]);
      if (xs > a && xs < b)
        require(val(xs) >= kNegTol, "density must be nonnegative");
    }
    const DensityPiece p{a, b, c};
    integral += piece_mass(p);
  }
  require(std::abs(integral - 1.0) <= kMassTol, "density must integrate to 1");
}

double PiecewiseDensity::value(double x) const {
  if (x < breakpoints_.front() || x > breakpoints_.back()) return 0.0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = (it == breakpoints_.begin())
                      ? 0
                      : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  if (i >= coeffs_.size()) i = coeffs_.size() - 1;
  const auto& c = coeffs_[i];
  return c[0] + c[1] * x + c[2] * x * x;
}

MixtureDist::MixtureDist(std::vector<WeightedComponent> components)
    : components_(std::move(components)) {
  require(!components_.empty(), "mixture needs at least one component");
  double sum = 0.0;
  for (const auto& c : components_) {
    require(finite(c.weight) && c.weight > 0.0, "mixture weights must be positive");
    sum += c.weight;
  }
  require(std::abs(sum - 1.0) <= kMassTol, "mixture weights must sum to 1");
  for (const auto& c : components_)
    require(mixture_depth(c.dist) < 64, "mixture nesting too deep");
}

Distribution::Distribution(DiscreteDist d) : v_(std::move(d)) {}
Distribution::Distribution(PiecewiseDensity d) : v_(std::move(d)) {}
Distribution::Distribution(MixtureDist d) : v_(std::move(d)) {}

Distribution Distribution::discrete(std::vector<double> atoms,
                                    std::vector<double> probs) {
  return Distribution(DiscreteDist(std::move(atoms), std::move(probs)));
}

Distribution Distribution::density(std::vector<double> breakpoints,
                                   std::vector<PiecewiseDensity::Coeffs> coeffs) {
  return Distribution(PiecewiseDensity(std::move(breakpoints), std::move(coeffs)));
}

Distribution Distribution::mixture(std::vector<WeightedComponent> components) {
  return Distribution(MixtureDist(std::move(components)));
}

Distribution Distribution::point_mass(double x) {
  return discrete({x}, {1.0});
}

Distribution Distribution::rademacher(double sigma) {
  require(sigma > 0.0, "rademacher scale must be positive");
  return discrete({-sigma, sigma}, {0.5, 0.5});
}

Distribution Distribution::uniform(double lo, double hi) {
  require(lo < hi, "uniform needs lo < hi");
  return density({lo, hi}, {{1.0 / (hi - lo), 0.0, 0.0}});
}

const DiscreteDist* Distribution::as_discrete() const noexcept {
  return std::get_if<DiscreteDist>(&v_);
}
const PiecewiseDensity* Distribution::as_density() const noexcept {
  return std::get_if<PiecewiseDensity>(&v_);
}
const MixtureDist* Distribution::as_mixture() const noexcept {
  return std::get_if<MixtureDist>(&v_);
}

double Distribution::cdf(double u) const {
  if (const auto* d = as_discrete()) {
    double s = 0.0;
    for (std::size_t i = 0; i < d->size() && d->atoms()[i] < u; ++i)
      s += d->probs()[i];
    return s;
  }
  if (const auto* p = as_density()) {
    const auto& bp = p->breakpoints();
    if (u <= bp.front()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < p->piece_count(); ++i) {
      const DensityPiece piece{bp[i], bp[i + 1], p->coeffs()[i]};
      if (u >= piece.hi) {
        s += piece_mass(piece);
      } else {
        s += piece_mass(DensityPiece{piece.lo, u, piece.c});
        break;
      }
    }
    return s;
  }
  double s = 0.0;
  for (const auto& c : as_mixture()->components()) s += c.weight * c.dist.cdf(u);
  return s;
}

MomentSet Distribution::moments() const {
  MomentSet m;
  m.mean = moment(1);
  m.second = moment(2);
  m.third = moment(3);
  m.abs_third = abs_moment(3.0);
  const double scale = std::max(1.0, std::abs(m.second));
  if (m.second + 1e-9 * scale < m.mean * m.mean)
    throw std::logic_error("moment inconsistency: EX^2 < (EX)^2");
  if (m.abs_third + 1e-9 * std::max(1.0, std::abs(m.third)) < std::abs(m.third))
    throw std::logic_error("moment inconsistency: E|X|^3 < |EX^3|");
  if (std::abs(m.mean) <= 1e-12 && std::abs(m.second - 1.0) <= 1e-12 &&
      m.abs_third < 1.0 - 1e-9)
    throw std::logic_error("moment inconsistency: standardized law with E|X|^3 < 1");
  return m;
}

double Distribution::moment(int n) const {
  require(n >= 0 && n <= 200, "moment order out of range");
  const FlatLaw f = flatten(*this);
  double s = 0.0;
  for (std::size_t i = 0; i < f.atoms.size(); ++i)
    s += f.probs[i] * ipow(f.atoms[i], n);
  for (const auto& p : f.pieces) s += piece_moment(p, n);
  return s;
}

double Distribution::abs_moment(double r) const {
  require(r > 0.0 && std::isfinite(r), "abs moment order must be positive");
  const FlatLaw f = flatten(*this);
  double s = 0.0;
  for (std::size_t i = 0; i < f.atoms.size(); ++i)
    s += f.probs[i] * rpow(std::abs(f.atoms[i]), r);
  for (const auto& p : f.pieces) s += piece_abs_moment(p, r);
  return s;
}

std::pair<double, double> Distribution::support() const {
  const FlatLaw f = flatten(*this);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  if (!f.atoms.empty()) {
    lo = f.atoms.front();
    hi = f.atoms.back();
    first = false;
  }
  for (const auto& p : f.pieces) {
    if (first) {
      lo = p.lo;
      hi = p.hi;
      first = false;
    } else {
      lo = std::min(lo, p.lo);
      hi = std::max(hi, p.hi);
    }
  }
  return {lo, hi};
}

bool Distribution::purely_atomic() const {
  return flatten(*this).pieces.empty();
}

Distribution Distribution::affine(double scale, double shift) const {
  require(scale != 0.0 && finite(scale) && finite(shift),
          "affine map needs finite nonzero scale");
  if (const auto* d = as_discrete()) {
    std::vector<double> atoms(d->size()), probs(d->size());
    for (std::size_t i = 0; i < d->size(); ++i) {
      atoms[i] = scale * d->atoms()[i] + shift;
      probs[i] = d->probs()[i];
    }
    if (scale < 0.0) {
      std::reverse(atoms.begin(), atoms.end());
      std::reverse(probs.begin(), probs.end());
    }
    return discrete(std::move(atoms), std::move(probs));
  }
  if (const auto* p = as_density()) {
    const double inv = 1.0 / scale;
    const double a = std::abs(scale);
    std::vector<double> bp(p->breakpoints().size());
    std::vector<PiecewiseDensity::Coeffs> cs(p->piece_count());
    for (std::size_t i = 0; i < bp.size(); ++i)
      bp[i] = scale * p->breakpoints()[i] + shift;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto& c = p->coeffs()[i];
      // density of scale*X + shift at y is f((y - shift)/scale)/|scale|
      cs[i] = {(c[0] - c[1] * inv * shift + c[2] * inv * inv * shift * shift) / a,
               (c[1] * inv - 2.0 * c[2] * inv * inv * shift) / a,
               (c[2] * inv * inv) / a};
    }
    if (scale < 0.0) {
      std::reverse(bp.begin(), bp.end());
      std::reverse(cs.begin(), cs.end());
    }
    return density(std::move(bp), std::move(cs));
  }
  std::vector<WeightedComponent> comps;
  comps.reserve(as_mixture()->components().size());
  for (const auto& c : as_mixture()->components())
    comps.push_back({c.weight, c.dist.affine(scale, shift)});
  return mixture(std::move(comps));
}

Distribution Distribution::standardized() const {
  const MomentSet m = moments();
  const double var = m.variance();
  require(var > 1e-15 * std::max(1.0, std::abs(m.second)), "degenerate distribution");
  const double sd = std::sqrt(var);
  return affine(1.0 / sd, -m.mean / sd);
}

double FlatLaw::atom_mass() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double FlatLaw::density_mass() const {
  double s = 0.0;
  for (const auto& p : pieces) s += piece_mass(p);
  return s;
}

namespace {

void flatten_into(const Distribution& d, double w,
                  std::vector<std::pair<double, double>>& atom_acc,
                  std::vector<DensityPiece>& piece_acc) {
  if (const auto* dd = d.as_discrete()) {
    for (std::size_t i = 0; i < dd->size(); ++i)
      atom_acc.emplace_back(dd->atoms()[i], w * dd->probs()[i]);
    return;
  }
  if (const auto* pd = d.as_density()) {
    for (std::size_t i = 0; i < pd->piece_count(); ++i) {
      const auto& c = pd->coeffs()[i];
      piece_acc.push_back({pd->breakpoints()[i], pd->breakpoints()[i + 1],
                           {w * c[0], w * c[1], w * c[2]}});
    }
    return;
  }
  for (const auto& c : d.as_mixture()->components())
    flatten_into(c.dist, w * c.weight, atom_acc, piece_acc);
}

}  // namespace

FlatLaw flatten(const Distribution& d) {
  std::vector<std::pair<double, double>> atom_acc;
  std::vector<DensityPiece> piece_acc;
  flatten_into(d, 1.0, atom_acc, piece_acc);
  std::sort(atom_acc.begin(), atom_acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FlatLaw out;
  for (const auto& [x, p] : atom_acc) {
    if (!out.atoms.empty() && out.atoms.back() == x) {
      out.probs.back() += p;
    } else {
      out.atoms.push_back(x);
      out.probs.push_back(p);
    }
  }
  std::sort(piece_acc.begin(), piece_acc.end(), [](const auto& a, const auto& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  out.pieces = std::move(piece_acc);
  return out;
}

MergedPieces merge_pieces(const std::vector<DensityPiece>& pieces) {
  MergedPieces out;
  if (pieces.empty()) return out;
  std::vector<double> cuts;
  cuts.reserve(2 * pieces.size());
  for (const auto& p : pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PiecewiseDensity::Coeffs> coeffs(cuts.size() - 1, {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (const auto& p : pieces) {
      if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) {
        coeffs[i][0] += p.c[0];
        coeffs[i][1] += p.c[1];
        coeffs[i][2] += p.c[2];
      }
    }
  }

  // Trim all-zero cells at the ends; keep interior zeros for contiguity.
  std::size_t first = 0, last = coeffs.size();
  const auto zero = [](const PiecewiseDensity::Coeffs& c) {
    return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0;
  };
  while (first < last && zero(coeffs[first])) ++first;
  while (last > first && zero(coeffs[last - 1])) --last;
  if (first == last) return out;  // no density mass at all

  out.coeffs.assign(coeffs.begin() + first, coeffs.begin() + last);
  out.breakpoints.assign(cuts.begin() + first, cuts.begin() + last + 1);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.mass += piece_mass(
        DensityPiece{out.breakpoints[i], out.breakpoints[i + 1], out.coeffs[i]});
  return out;
}

Distribution from_flat(const FlatLaw& flat) {
  const MergedPieces mp = merge_pieces(flat.pieces);
  const bool has_atoms = !flat.atoms.empty();
  const bool has_density = !mp.coeffs.empty();
  require(has_atoms || has_density, "law has no mass");

  if (has_atoms && !has_density)
    return Distribution::discrete(flat.atoms, flat.probs);

  auto normalized_density = [&](double mass) {
    std::vector<PiecewiseDensity::Coeffs> cs(mp.coeffs);
    for (auto& c : cs) {
      c[0] /= mass;
      c[1] /= mass;
      c[2] /= mass;
    }
    return Distribution::density(mp.breakpoints, std::move(cs));
  };

  if (has_density && !has_atoms) return normalized_density(mp.mass);

  double wa = 0.0;
  for (double p : flat.probs) wa += p;
  std::vector<double> probs(flat.probs);
  for (double& p : probs) p /= wa;
  std::vector<WeightedComponent> comps;
  comps.push_back({wa, Distribution::discrete(flat.atoms, std::move(probs))});
  comps.push_back({mp.mass, normalized_density(mp.mass)});
  return Distribution::mixture(std::move(comps));
}

double piece_mass(const DensityPiece& p) { return piece_moment(p, 0); }

double piece_moment(const DensityPiece& p, int n) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (p.c[j] == 0.0) continue;
    const int k = n + j + 1;
    s += p.c[j] * (ipow(p.hi, k) - ipow(p.lo, k)) / k;
  }
  return s;
}

namespace {

// integral over [a, b] (subset of [0, inf)) of x^r * (c0 + c1 x + c2 x^2)
double nonneg_abs_piece(double a, double b, const std::array<double, 3>& c,
                        double r) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (c[j] == 0.0) continue;
    const double k = r + j + 1;
    s += c[j] * (rpow(b, k) - rpow(a, k)) / k;
  }
  return s;
}

}  // namespace

double piece_abs_moment(const DensityPiece& p, double r) {
  if (p.lo >= 0.0) return nonneg_abs_piece(p.lo, p.hi, p.c, r);
  if (p.hi <= 0.0) {
    // substitute y = -x; odd coefficients flip sign
    const std::array<double, 3> cm{p.c[0], -p.c[1], p.c[2]};
    return nonneg_abs_piece(-p.hi, -p.lo, cm, r);
  }
  const DensityPiece left{p.lo, 0.0, p.c};
  const DensityPiece right{0.0, p.hi, p.c};
  return piece_abs_moment(left, r) + piece_abs_moment(right, r);
}

}  // namespace sqbias
