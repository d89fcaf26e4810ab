#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sqbias {

// Result of one randomized verification suite. max_violation is the largest
// observed excess over the checked inequality (negative when every check
// held with slack); ok means it stayed at or below the suite threshold.
struct VerifyReport {
  std::string suite;
  std::int64_t count = 0;
  double max_violation = 0.0;
  double threshold = 0.0;
  bool ok = false;
  nlohmann::json counterexample;  // null unless a check failed
};

const std::vector<std::string>& verify_suite_names();

// Runs one named suite with the given seed; count <= 0 selects the suite
// default. Throws std::invalid_argument for unknown suite names.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed,
                              std::int64_t count);

// {"suite":..., "count":..., "max_violation":...} - stable field order.
nlohmann::ordered_json report_to_json(const VerifyReport& report);

}  // namespace sqbias
