#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace sqbias {

// Tolerance used when validating that probabilities, mixture weights and
// density integrals sum to one. Inputs are often human-authored JSON, so
// anything tighter rejects legitimate files.
inline constexpr double kMassTol = 1e-12;

// Finitely supported law: strictly increasing atoms carrying positive mass.
class DiscreteDist {
 public:
  DiscreteDist(std::vector<double> atoms, std::vector<double> probs);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  std::vector<double> atoms_;
  std::vector<double> probs_;
};

// Compactly supported density that is polynomial of degree <= 2 on each cell
// of a breakpoint grid. This family is closed under the transforms
// implemented here: the zero bias of a discrete law is piecewise constant,
// and size/square bias of piecewise-constant densities stay within degree 2.
// Operations whose result would leave the family are rejected with an error
// instead of being silently approximated.
class PiecewiseDensity {
 public:
  using Coeffs = std::array<double, 3>;  // density c0 + c1*x + c2*x^2

  PiecewiseDensity(std::vector<double> breakpoints, std::vector<Coeffs> coeffs);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<Coeffs>& coeffs() const noexcept { return coeffs_; }
  std::size_t piece_count() const noexcept { return coeffs_.size(); }

  double value(double x) const;  // density at x, zero outside the support

 private:
  std::vector<double> breakpoints_;
  std::vector<Coeffs> coeffs_;
};

class Distribution;
struct WeightedComponent;

// Finite convex combination of distributions. Point masses inside mixtures
// are modeled as single-atom DiscreteDist components.
class MixtureDist {
 public:
  explicit MixtureDist(std::vector<WeightedComponent> components);
  const std::vector<WeightedComponent>& components() const noexcept {
    return components_;
  }

 private:
  std::vector<WeightedComponent> components_;
};

struct MomentSet {
  double mean = 0.0;
  double second = 0.0;     // E X^2
  double third = 0.0;      // E X^3
  double abs_third = 0.0;  // E |X|^3
  double variance() const noexcept { return second - mean * mean; }
};

// Tagged union of the three representations. Values are immutable after
// construction and every operation is pure, so instances may be shared
// freely across threads.
class Distribution {
 public:
  using Variant = std::variant<DiscreteDist, PiecewiseDensity, MixtureDist>;

  Distribution(DiscreteDist d);
  Distribution(PiecewiseDensity d);
  Distribution(MixtureDist d);

  static Distribution discrete(std::vector<double> atoms, std::vector<double> probs);
  static Distribution density(std::vector<double> breakpoints,
                              std::vector<PiecewiseDensity::Coeffs> coeffs);
  static Distribution mixture(std::vector<WeightedComponent> components);
  static Distribution point_mass(double x);
  static Distribution rademacher(double sigma = 1.0);  // P(+-sigma) = 1/2 each
  static Distribution uniform(double lo, double hi);

  const Variant& value() const noexcept { return v_; }
  const DiscreteDist* as_discrete() const noexcept;
  const PiecewiseDensity* as_density() const noexcept;
  const MixtureDist* as_mixture() const noexcept;

  // Left-continuous distribution function F(u) = P(X < u).
  double cdf(double u) const;

  MomentSet moments() const;
  double moment(int n) const;         // E X^n, exact closed form
  double abs_moment(double r) const;  // E |X|^r for r > 0, exact closed form
  std::pair<double, double> support() const;
  bool purely_atomic() const;

  // Law of scale*X + shift; scale must be nonzero.
  Distribution affine(double scale, double shift) const;
  // Affine image with mean 0 and variance 1.
  Distribution standardized() const;

 private:
  Variant v_;
};

struct WeightedComponent {
  double weight;
  Distribution dist;
};

// One density cell of a flattened law.
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::array<double, 3> c{0.0, 0.0, 0.0};
};

// Normalized view of an arbitrary Distribution: merged atoms plus a list of
// density cells (possibly overlapping when they come from different mixture
// components). Nested mixture weights are already multiplied through.
struct FlatLaw {
  std::vector<double> atoms;
  std::vector<double> probs;
  std::vector<DensityPiece> pieces;

  double atom_mass() const;
  double density_mass() const;
};

FlatLaw flatten(const Distribution& d);

// Union of possibly overlapping cells as one contiguous grid.
struct MergedPieces {
  std::vector<double> breakpoints;
  std::vector<PiecewiseDensity::Coeffs> coeffs;
  double mass = 0.0;
};
MergedPieces merge_pieces(const std::vector<DensityPiece>& pieces);

// Rebuild a Distribution from flattened parts: discrete, density, or a
// two-component mixture when both kinds of mass are present.
Distribution from_flat(const FlatLaw& flat);

// Exact cell integrals.
double piece_mass(const DensityPiece& p);
double piece_moment(const DensityPiece& p, int n);          // integral of x^n * density
double piece_abs_moment(const DensityPiece& p, double r);   // integral of |x|^r * density

// x^n by repeated squaring; bit-for-bit deterministic.
double ipow(double x, int n);

}  // namespace sqbias
