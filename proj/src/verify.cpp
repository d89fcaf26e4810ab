#include "sqbias/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqbias/charfn.hpp"
#include "sqbias/extremal.hpp"
#include "sqbias/json_io.hpp"
#include "sqbias/lawgen.hpp"
#include "sqbias/metrics.hpp"
#include "sqbias/transforms.hpp"

namespace sqbias {

namespace {

using nlohmann::json;

// violation tracker; remembers the first law that exceeded the threshold
struct Tracker {
  VerifyReport report;

  explicit Tracker(std::string suite, double threshold) {
    report.suite = std::move(suite);
    report.threshold = threshold;
    report.max_violation = -std::numeric_limits<double>::infinity();
  }

  bool record(double violation, const json& context) {
    report.max_violation = std::max(report.max_violation, violation);
    if (violation > report.threshold && report.counterexample.is_null()) {
      report.counterexample = context;
      return false;
    }
    return true;
  }

  VerifyReport finish(std::int64_t count) {
    report.count = count;
    report.ok = report.counterexample.is_null();
    return report;
  }
};

std::vector<double> cdf_grid(const Distribution& a, const Distribution& b) {
  const FlatLaw fa = flatten(a);
  const FlatLaw fb = flatten(b);
  std::vector<double> xs;
  for (const FlatLaw* f : {&fa, &fb}) {
    xs.insert(xs.end(), f->atoms.begin(), f->atoms.end());
    for (const auto& p : f->pieces) {
      xs.push_back(p.lo);
      xs.push_back(p.hi);
    }
  }
  const auto [lo1, hi1] = a.support();
  const auto [lo2, hi2] = b.support();
  const double lo = std::min(lo1, lo2) - 0.5;
  const double hi = std::max(hi1, hi2) + 0.5;
  for (int i = 0; i <= 1000; ++i) xs.push_back(lo + (hi - lo) * i / 1000.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

double sup_cdf_diff(const Distribution& a, const Distribution& b) {
  double sup = 0.0;
  for (double u : cdf_grid(a, b))
    sup = std::max(sup, std::abs(a.cdf(u) - b.cdf(u)));
  return sup;
}

json law_context(const Distribution& d, const char* what, double violation) {
  json j;
  j["check"] = what;
  j["violation"] = violation;
  j["law"] = distribution_to_json(d);
  return j;
}

VerifyReport suite_moments(std::uint64_t seed, std::int64_t count) {
  Tracker tr("moments", 1e-10);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution d = random_standardized_law(rng);
    const double m2 = d.moment(2);
    const Distribution zb = zero_bias(d);
    const Distribution sq = square_bias(d);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const double lhs = m2 * zb.moment(n);
      const double rhs = d.moment(n + 2) / (n + 1);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    for (double r : {0.5, 1.0, 2.5}) {
      const double lhs = m2 * sq.abs_moment(r);
      const double rhs = d.abs_moment(r + 2.0);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    if (!tr.record(worst, law_context(d, "moment identities", worst))) break;
  }
  return tr.finish(count);
}

VerifyReport suite_fixed_points(std::uint64_t, std::int64_t) {
  Tracker tr("fixed-points", 0.0);
  std::int64_t checks = 0;
  for (double sigma : {0.5, 1.0, 3.0}) {
    const Distribution d = Distribution::rademacher(sigma);
    const Distribution sq = square_bias(d);
    const auto* in = d.as_discrete();
    const auto* out = sq.as_discrete();
    double worst = 1.0;
    if (out != nullptr && out->size() == in->size()) {
      worst = 0.0;
      for (std::size_t i = 0; i < in->size(); ++i) {
        worst = std::max(worst, std::abs(in->atoms()[i] - out->atoms()[i]));
        worst = std::max(worst, std::abs(in->probs()[i] - out->probs()[i]));
      }
    }
    ++checks;
    if (!tr.record(worst, law_context(d, "square bias fixed point", worst)))
      return tr.finish(checks);
  }
  for (double c : {0.5, 2.5}) {
    const Distribution d = Distribution::point_mass(c);
    const Distribution sb = size_bias(d);
    const auto* out = sb.as_discrete();
    const double worst =
        (out != nullptr && out->size() == 1)
            ? std::max(std::abs(out->atoms()[0] - c), std::abs(out->probs()[0] - 1.0))
            : 1.0;
    ++checks;
    if (!tr.record(worst, law_context(d, "size bias fixed point", worst)))
      return tr.finish(checks);
  }
  return tr.finish(checks);
}

VerifyReport suite_theorem1(std::uint64_t seed, std::int64_t count) {
  Tracker tr("theorem1", 1e-9);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution d = random_standardized_law(rng);
    const double v = l1_distance(d, square_bias(d)) - d.abs_moment(3.0);
    if (!tr.record(v, law_context(d, "L1(X, Xsq) <= E|X|^3", v))) break;
  }
  return tr.finish(count);
}

VerifyReport suite_eq3(std::uint64_t seed, std::int64_t count) {
  Tracker tr("eq3", 1e-10);
  // Rademacher attains the bound with equality
  {
    const Distribution d = Distribution::rademacher();
    const double diff =
        std::abs(l1_distance(d, zero_bias(d)) - 0.5 * d.abs_moment(3.0));
    if (!tr.record(diff, law_context(d, "zero-bias L1 equality", diff)))
      return tr.finish(1);
  }
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution d = random_standardized_law(rng);
    const double v = l1_distance(d, zero_bias(d)) - 0.5 * d.abs_moment(3.0);
    if (!tr.record(v, law_context(d, "L1(X, Xz) <= E|X|^3 / 2", v))) break;
  }
  return tr.finish(count + 1);
}

VerifyReport suite_eq8(std::uint64_t seed, std::int64_t count) {
  Tracker tr("eq8", 1e-10);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution a = random_standardized_law(rng);
    const Distribution b = random_standardized_law(rng);
    const double l1 = l1_distance(a, b);
    double worst = -1.0;
    for (int k = 1; k <= 50; ++k) {
      const double t = 0.1 * k;
      const double actual = std::abs(cf_eval(a, t).f - cf_eval(b, t).f);
      worst = std::max(worst, actual - cf_distance_bound(l1, t));
    }
    json ctx = law_context(a, "smoothing inequality", worst);
    ctx["law_b"] = distribution_to_json(b);
    if (!tr.record(worst, ctx)) break;
  }
  return tr.finish(count);
}

VerifyReport suite_cf_consistency(std::uint64_t seed, std::int64_t count) {
  Tracker tr("cf-consistency", 1e-10);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution d = random_standardized_law(rng);
    const Distribution pos = random_nonnegative_law(rng);
    const Distribution zb = zero_bias(d);
    const Distribution sq = square_bias(d);
    const Distribution sz = size_bias(pos);
    double worst = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const double t = 0.1 * k;
      worst = std::max(worst, std::abs(cf_eval(zb, t).f - cf_zero_bias(d, t)));
      worst = std::max(worst, std::abs(cf_eval(sq, t).f - cf_square_bias(d, t)));
      worst = std::max(worst, std::abs(cf_eval(sz, t).f - cf_size_bias(pos, t)));
    }
    json ctx = law_context(d, "transform/cf commutation", worst);
    ctx["nonnegative_law"] = distribution_to_json(pos);
    if (!tr.record(worst, ctx)) break;
  }
  return tr.finish(count);
}

VerifyReport suite_decomposition(std::uint64_t seed, std::int64_t count) {
  Tracker tr("decomposition", 1e-10);
  SplitMix64 rng(seed);
  std::int64_t done = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    std::vector<Distribution> summands;
    if (i == 0) {
      summands = {Distribution::rademacher(), Distribution::rademacher()};
    } else {
      const int n = 2 + rng.uniform_int(3);
      for (int j = 0; j < n; ++j) summands.push_back(random_standardized_law(rng));
    }
    Distribution total = Distribution::point_mass(0.0);
    for (const auto& s : summands) total = convolve(total, s);
    const Distribution direct = zero_bias(total);
    const Distribution composed = zero_bias_decomposition(summands);
    const double v = sup_cdf_diff(direct, composed);
    ++done;
    json ctx;
    ctx["check"] = "zero-bias decomposition";
    ctx["violation"] = v;
    ctx["summands"] = json::array();
    for (const auto& s : summands) ctx["summands"].push_back(distribution_to_json(s));
    if (!tr.record(v, ctx)) break;
  }
  return tr.finish(done);
}

VerifyReport suite_uprod(std::uint64_t seed, std::int64_t count) {
  Tracker tr("uprod", 1e-12);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const Distribution d = random_symmetric_standardized_law(rng);
    const double v =
        sup_cdf_diff(zero_bias(d), uniform_product_square_bias(d));
    if (!tr.record(v, law_context(d, "U*Xsq matches zero bias", v))) break;
  }
  return tr.finish(count);
}

VerifyReport suite_extremal(std::uint64_t, std::int64_t) {
  Tracker tr("extremal", 1e-9);
  const ScanResult scan = scan_three_point();
  json ctx;
  ctx["check"] = "three-point excess supremum";
  ctx["max_g"] = scan.max_g;
  ctx["argmax"] = {{"x", scan.argmax.x},
                   {"y", scan.argmax.y},
                   {"z", scan.argmax.z},
                   {"sigma2", scan.argmax.sigma2}};
  tr.record(scan.max_g, ctx);
  return tr.finish(scan.cells);
}

struct SuiteEntry {
  const char* name;
  std::int64_t default_count;
  VerifyReport (*fn)(std::uint64_t, std::int64_t);
};

constexpr SuiteEntry kSuites[] = {
    {"moments", 500, suite_moments},
    {"fixed-points", 0, suite_fixed_points},
    {"theorem1", 500, suite_theorem1},
    {"eq3", 200, suite_eq3},
    {"eq8", 50, suite_eq8},
    {"cf-consistency", 50, suite_cf_consistency},
    {"decomposition", 25, suite_decomposition},
    {"uprod", 100, suite_uprod},
    {"extremal", 0, suite_extremal},
};

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed,
                              std::int64_t count) {
  for (const auto& s : kSuites) {
    if (suite == s.name)
      return s.fn(seed, count > 0 ? count : s.default_count);
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

nlohmann::ordered_json report_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["count"] = report.count;
  j["max_violation"] = report.max_violation;
  return j;
}

}  // namespace sqbias
