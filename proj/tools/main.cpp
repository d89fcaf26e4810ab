#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqbias/bounds.hpp"
#include "sqbias/extremal.hpp"
#include "sqbias/json_io.hpp"
#include "sqbias/metrics.hpp"
#include "sqbias/transforms.hpp"
#include "sqbias/verify.hpp"

namespace {

// exit codes: 0 ok, 2 usage/parse/precondition error, 3 mathematical violation
constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kMathViolation = 3;

int cmd_transform(const std::string& in, const std::string& kind,
                  const std::string& out) {
  const sqbias::Distribution d = sqbias::load_distribution(in);
  sqbias::Distribution result = [&] {
    if (kind == "size") return sqbias::size_bias(d);
    if (kind == "zero") return sqbias::zero_bias(d);
    if (kind == "square") return sqbias::square_bias(d);
    if (kind == "double-size") return sqbias::double_size_bias(d);
    if (kind == "uprod") return sqbias::uniform_product_square_bias(d);
    throw std::invalid_argument("unknown transform kind '" + kind + "'");
  }();
  sqbias::save_distribution(result, out);
  return kOk;
}

int cmd_metric(const std::string& a_path, const std::string& b_path) {
  const double l1 = sqbias::l1_distance(sqbias::load_distribution(a_path),
                                        sqbias::load_distribution(b_path));
  std::printf("%.17g\n", l1);
  return kOk;
}

int cmd_bounds(const std::string& in, double tmax, int steps,
               const std::string& out, bool standardize, bool completed) {
  sqbias::Distribution d = sqbias::load_distribution(in);
  if (standardize) d = d.standardized();
  const sqbias::BoundCurve curve = sqbias::bound_curve(d, tmax, steps, completed);
  if (out.empty()) {
    sqbias::write_csv(curve, std::cout);
  } else {
    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot write '" + out + "'");
    sqbias::write_csv(curve, os);
  }
  if (curve.min_slack() < -1e-9) {
    std::cerr << "bound violation: min slack " << curve.min_slack() << "\n";
    return kMathViolation;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::int64_t count) {
  const sqbias::VerifyReport report = sqbias::run_verify_suite(suite, seed, count);
  if (report.ok) {
    std::cout << sqbias::report_to_json(report).dump(2) << "\n";
    return kOk;
  }
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["counterexample"] = report.counterexample;
  std::cout << j.dump(2) << "\n";
  return kMathViolation;
}

int cmd_extremal_scan(const sqbias::GridSpec& spec, const std::string& out) {
  const sqbias::ScanResult scan = sqbias::scan_three_point(spec);
  nlohmann::ordered_json j;
  j["max_g"] = scan.max_g;
  j["argmax"] = {{"x", scan.argmax.x},
                 {"y", scan.argmax.y},
                 {"z", scan.argmax.z},
                 {"sigma2", scan.argmax.sigma2}};
  j["cells"] = scan.cells;
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot write '" + out + "'");
    os << j.dump(2) << "\n";
  }
  return scan.max_g <= 1e-9 ? kOk : kMathViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size-, zero-, and square-bias transformations of compactly "
               "supported laws, exact L1 distances, and characteristic-function "
               "bound verification"};
  app.require_subcommand(1);

  std::string in_file, out_file, b_file, kind, suite;
  double tmax = 3.0;
  int steps = 30;
  bool standardize = false, completed = false;
  std::uint64_t seed = 42;
  std::int64_t count = 0;
  sqbias::GridSpec grid;

  auto* transform = app.add_subcommand("transform", "apply a bias transform");
  transform->add_option("input", in_file, "input distribution JSON")->required();
  transform->add_option("output", out_file, "output distribution JSON")->required();
  transform->add_option("--kind", kind, "size|zero|square|double-size|uprod")
      ->required();

  auto* metric = app.add_subcommand("metric", "L1 distance between two laws");
  metric->add_option("a", in_file, "first distribution JSON")->required();
  metric->add_option("b", b_file, "second distribution JSON")->required();

  auto* bounds = app.add_subcommand("bounds", "bound curve CSV for one law");
  bounds->add_option("input", in_file, "input distribution JSON")->required();
  bounds->add_option("--tmax", tmax, "grid endpoint")->check(CLI::PositiveNumber);
  bounds->add_option("--steps", steps, "grid steps")->check(CLI::PositiveNumber);
  bounds->add_option("--out", out_file, "output CSV path (stdout when omitted)");
  bounds->add_flag("--standardize", standardize, "standardize the input first");
  bounds->add_flag("--cor2-completed", completed,
                   "also report the completed-integral variant of cor2");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suites_help;
  for (const auto& name : sqbias::verify_suite_names())
    suites_help += (suites_help.empty() ? "" : "|") + name;
  verify->add_option("--suite", suite, suites_help)->required();
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--count", count, "number of random cases (0 = default)");

  auto* scan = app.add_subcommand("extremal-scan", "three-point grid scan");
  scan->add_option("--x-min", grid.x_min);
  scan->add_option("--x-max", grid.x_max);
  scan->add_option("--y-min", grid.y_min);
  scan->add_option("--y-max", grid.y_max);
  scan->add_option("--z-min", grid.z_min);
  scan->add_option("--z-max", grid.z_max);
  scan->add_option("--axis-points", grid.axis_points)->check(CLI::PositiveNumber);
  scan->add_option("--sigma2-points", grid.sigma2_points)->check(CLI::PositiveNumber);
  scan->add_option("--margin", grid.margin)->check(CLI::PositiveNumber);
  scan->add_option("--out", out_file, "output JSON path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (transform->parsed()) return cmd_transform(in_file, kind, out_file);
    if (metric->parsed()) return cmd_metric(in_file, b_file);
    if (bounds->parsed())
      return cmd_bounds(in_file, tmax, steps, out_file, standardize, completed);
    if (verify->parsed()) return cmd_verify(suite, seed, count);
    if (scan->parsed()) return cmd_extremal_scan(grid, out_file);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
