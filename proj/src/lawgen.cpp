#include "sqbias/lawgen.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sqbias {

namespace {

std::vector<double> simplex_sample(SplitMix64& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    if (u >= 1.0) u = 0.5;
    w[i] = -std::log(1.0 - u);
    if (w[i] <= 0.0) w[i] = 1e-300;
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

bool distinct_sorted(std::vector<double>& atoms, double min_gap) {
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
    if (atoms[i + 1] - atoms[i] < min_gap) return false;
  return true;
}

}  // namespace

Distribution random_standardized_law(SplitMix64& rng) {
  for (;;) {
    const int k = 2 + rng.uniform_int(5);
    std::vector<double> atoms(k);
    for (double& a : atoms) a = rng.uniform(-5.0, 5.0);
    if (!distinct_sorted(atoms, 1e-6)) continue;
    const Distribution d = Distribution::discrete(atoms, simplex_sample(rng, k));
    const MomentSet m = d.moments();
    if (m.variance() < 0.04) continue;  // avoid exploding atoms after scaling
    return d.standardized();
  }
}

Distribution random_symmetric_standardized_law(SplitMix64& rng) {
  for (;;) {
    const int k = 1 + rng.uniform_int(3);
    std::vector<double> pos(k);
    for (double& a : pos) a = rng.uniform(0.2, 5.0);
    if (!distinct_sorted(pos, 1e-6)) continue;
    const std::vector<double> w = simplex_sample(rng, k);
    std::vector<double> atoms, probs;
    for (int i = k - 1; i >= 0; --i) {
      atoms.push_back(-pos[i]);
      probs.push_back(0.5 * w[i]);
    }
    for (int i = 0; i < k; ++i) {
      atoms.push_back(pos[i]);
      probs.push_back(0.5 * w[i]);
    }
    double m2 = 0.0;
    for (int i = 0; i < k; ++i) m2 += w[i] * pos[i] * pos[i];
    const double scale = 1.0 / std::sqrt(m2);
    // scale atoms directly so the law stays exactly symmetric
    for (double& a : atoms) a *= scale;
    return Distribution::discrete(std::move(atoms), std::move(probs));
  }
}

Distribution random_nonnegative_law(SplitMix64& rng) {
  for (;;) {
    const int k = 2 + rng.uniform_int(5);
    std::vector<double> atoms(k);
    for (double& a : atoms) a = rng.uniform(0.1, 5.0);
    if (!distinct_sorted(atoms, 1e-6)) continue;
    return Distribution::discrete(atoms, simplex_sample(rng, k));
  }
}

}  // namespace sqbias
