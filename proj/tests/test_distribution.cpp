#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sqbias/distribution.hpp"
#include "sqbias/lawgen.hpp"
#include "test_helpers.hpp"

using namespace sqbias;
using sqbias::testing::near;

namespace {

Distribution two_point_p01() {
  // P(X = 3) = 0.1, P(X = -1/3) = 0.9: mean 0, variance 1
  return Distribution::discrete({-1.0 / 3.0, 3.0}, {0.9, 0.1});
}

}  // namespace

TEST_CASE("construction validates invariants") {
  CHECK_THROWS_AS(Distribution::discrete({1.0, 1.0}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution::discrete({1.0, 2.0}, {0.5, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution::discrete({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::density({0.0, 1.0}, {{2.0, 0.0, 0.0}}),
                  std::invalid_argument);
  // integrates to 1 but dips negative at the stationary point
  CHECK_THROWS_AS(Distribution::density({-1.0, 1.0}, {{-0.5, 0.0, 3.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution::mixture({}), std::invalid_argument);
  CHECK_THROWS_AS(
      Distribution::mixture({{0.5, Distribution::point_mass(0.0)},
                             {0.4, Distribution::point_mass(1.0)}}),
      std::invalid_argument);
}

TEST_CASE("cdf uses the left-continuous convention") {
  const Distribution r = Distribution::rademacher();
  CHECK(r.cdf(1.0) == 0.5);
  CHECK(r.cdf(1.5) == 1.0);
  CHECK(r.cdf(-1.0) == 0.0);
  CHECK(r.cdf(-0.999) == 0.5);

  const Distribution u = Distribution::uniform(-1.0, 1.0);
  CHECK(u.cdf(0.0) == 0.5);
  CHECK(u.cdf(-2.0) == 0.0);
  CHECK(u.cdf(2.0) == 1.0);

  // half uniform, half point mass at 0; left continuity makes F(0) = 1/4
  const Distribution mix = Distribution::mixture(
      {{0.5, u}, {0.5, Distribution::point_mass(0.0)}});
  CHECK(mix.cdf(0.0) == 0.25);
}

TEST_CASE("cdf limits and monotonicity") {
  SplitMix64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Distribution d = random_standardized_law(rng);
    CHECK(d.cdf(-1e6) <= 1e-12);
    CHECK(d.cdf(1e6) >= 1.0 - 1e-12);
    double prev = -1.0;
    for (int k = 0; k <= 200; ++k) {
      const double u = -8.0 + 16.0 * k / 200.0;
      const double v = d.cdf(u);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("moments of reference laws") {
  const MomentSet r = Distribution::rademacher().moments();
  CHECK(r.mean == 0.0);
  CHECK(r.second == 1.0);
  CHECK(r.third == 0.0);
  CHECK(r.abs_third == 1.0);

  const MomentSet t = two_point_p01().moments();
  CHECK(near(t.mean, 0.0, 1e-15));
  CHECK(near(t.second, 1.0, 1e-15));
  CHECK(near(t.third, 8.0 / 3.0, 1e-13));
  CHECK(near(t.abs_third, 41.0 / 15.0, 1e-13));

  const MomentSet u = Distribution::uniform(-1.0, 1.0).moments();
  CHECK(near(u.mean, 0.0, 1e-15));
  CHECK(near(u.second, 1.0 / 3.0, 1e-15));
  CHECK(near(u.third, 0.0, 1e-15));
  CHECK(near(u.abs_third, 0.25, 1e-15));
}

TEST_CASE("abs_moment closed forms") {
  CHECK(Distribution::rademacher().abs_moment(2.5) == 1.0);
  CHECK(near(two_point_p01().abs_moment(1.0), 0.6, 1e-15));
  CHECK(near(Distribution::uniform(-1.0, 1.0).abs_moment(3.0), 0.25, 1e-15));
  // fractional order on a density piece straddling zero
  const double expected = 2.0 * 0.5 / 2.5;  // integral of |x|^{1.5} / 2 over [-1,1]
  CHECK(near(Distribution::uniform(-1.0, 1.0).abs_moment(1.5), expected, 1e-14));
  CHECK_THROWS_AS(Distribution::rademacher().abs_moment(0.0), std::invalid_argument);
}

TEST_CASE("atom sums match abs_moment at integer orders exactly") {
  SplitMix64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Distribution d = random_standardized_law(rng);
    const auto* dd = d.as_discrete();
    REQUIRE(dd != nullptr);
    for (int n : {1, 2, 3, 4}) {
      double s = 0.0;
      for (std::size_t k = 0; k < dd->size(); ++k)
        s += dd->probs()[k] * ipow(std::abs(dd->atoms()[k]), n);
      CHECK(d.abs_moment(n) == s);
    }
  }
}

TEST_CASE("standardize maps to mean zero variance one") {
  const Distribution d = Distribution::discrete({0.0, 2.0}, {0.5, 0.5});
  const Distribution s = d.standardized();
  const auto* sd = s.as_discrete();
  REQUIRE(sd != nullptr);
  CHECK(sd->atoms()[0] == -1.0);
  CHECK(sd->atoms()[1] == 1.0);
  CHECK(sd->probs()[0] == 0.5);

  // already standardized input comes back essentially unchanged
  const Distribution r = Distribution::rademacher().standardized();
  CHECK(near(r.as_discrete()->atoms()[0], -1.0, 1e-15));
  CHECK(near(r.as_discrete()->atoms()[1], 1.0, 1e-15));

  // mean 2.4, sd 1.2 member of the p = 0.1 family
  const Distribution f = Distribution::discrete({2.0, 6.0}, {0.9, 0.1});
  const Distribution fstd = f.standardized();
  const auto* fs = fstd.as_discrete();
  CHECK(near(fs->atoms()[0], -1.0 / 3.0, 1e-14));
  CHECK(near(fs->atoms()[1], 3.0, 1e-14));

  CHECK_THROWS_WITH_AS(Distribution::point_mass(1.0).standardized(),
                       "degenerate distribution", std::invalid_argument);

  SplitMix64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const MomentSet m = random_standardized_law(rng).moments();
    CHECK(near(m.mean, 0.0, 1e-12));
    CHECK(near(m.second, 1.0, 1e-12));
  }
}

TEST_CASE("mixture cdf is the weighted sum of component cdfs") {
  const Distribution a = Distribution::rademacher();
  const Distribution b = Distribution::uniform(-2.0, 1.0);
  const Distribution mix = Distribution::mixture({{0.25, a}, {0.75, b}});
  for (int k = 0; k <= 1000; ++k) {
    const double u = -3.0 + 5.0 * k / 1000.0;
    CHECK(near(mix.cdf(u), 0.25 * a.cdf(u) + 0.75 * b.cdf(u), 1e-14));
  }

  // single component behaves like the component
  const Distribution one = Distribution::mixture({{1.0, a}});
  for (int k = 0; k <= 100; ++k) {
    const double u = -2.0 + 4.0 * k / 100.0;
    CHECK(one.cdf(u) == a.cdf(u));
  }

  // mixing a law with itself changes nothing
  const Distribution twice = Distribution::mixture({{0.5, a}, {0.5, a}});
  for (int k = 0; k <= 100; ++k) {
    const double u = -2.0 + 4.0 * k / 100.0;
    CHECK(near(twice.cdf(u), a.cdf(u), 1e-15));
  }
}

TEST_CASE("affine transforms with negative scale reverse the support") {
  const Distribution d = Distribution::discrete({1.0, 2.0}, {0.25, 0.75});
  const Distribution neg = d.affine(-2.0, 0.0);
  const auto* nd = neg.as_discrete();
  CHECK(nd->atoms()[0] == -4.0);
  CHECK(nd->atoms()[1] == -2.0);
  CHECK(nd->probs()[0] == 0.75);

  const Distribution u = Distribution::uniform(0.0, 1.0).affine(-1.0, 0.0);
  CHECK(near(u.cdf(-0.25), 0.75, 1e-15));
  CHECK_THROWS_AS(d.affine(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("flatten and from_flat round-trip a nested mixture") {
  const Distribution mix = Distribution::mixture(
      {{0.5, Distribution::mixture({{0.5, Distribution::rademacher()},
                                    {0.5, Distribution::uniform(-1.0, 1.0)}})},
       {0.5, Distribution::point_mass(0.5)}});
  const FlatLaw f = flatten(mix);
  CHECK(f.atoms.size() == 3);  // -1, 0.5, 1
  CHECK(f.pieces.size() == 1);
  CHECK(near(f.atom_mass() + f.density_mass(), 1.0, 1e-15));
  const Distribution back = from_flat(f);
  CHECK(sqbias::testing::sup_cdf_diff(mix, back) <= 1e-15);
}
