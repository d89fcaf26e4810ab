#pragma once

#include <string>

#include "json.hpp"
#include "sqbias/distribution.hpp"

namespace sqbias {

// Wire format (unknown fields are rejected):
//   {"type":"discrete","atoms":[...],"probs":[...]}
//   {"type":"density","breakpoints":[...],"coeffs":[[c0,c1,c2],...]}
//   {"type":"mixture","components":[{"weight":w,"dist":{...}},...]}
Distribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const Distribution& d);

Distribution load_distribution(const std::string& path);
void save_distribution(const Distribution& d, const std::string& path);

}  // namespace sqbias
