#include "sqbias/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace sqbias {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) known = true;
    require(known, "unknown field '" + item.key() + "' in distribution object");
  }
}

std::vector<double> number_array(const json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number(), std::string(what) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Distribution parse(const json& j, int depth) {
  require(depth < 64, "mixture nesting too deep");
  require(j.is_object(), "distribution must be a JSON object");
  require(j.contains("type") && j.at("type").is_string(),
          "distribution needs a string 'type' field");
  const std::string type = j.at("type").get<std::string>();

  if (type == "discrete") {
    check_keys(j, {"type", "atoms", "probs"});
    require(j.contains("atoms") && j.contains("probs"),
            "discrete law needs 'atoms' and 'probs'");
    return Distribution::discrete(number_array(j.at("atoms"), "atoms"),
                                  number_array(j.at("probs"), "probs"));
  }
  if (type == "density") {
    check_keys(j, {"type", "breakpoints", "coeffs"});
    require(j.contains("breakpoints") && j.contains("coeffs"),
            "density needs 'breakpoints' and 'coeffs'");
    const json& jc = j.at("coeffs");
    require(jc.is_array(), "coeffs must be an array");
    std::vector<PiecewiseDensity::Coeffs> coeffs;
    coeffs.reserve(jc.size());
    for (const auto& row : jc) {
      const auto vals = number_array(row, "coeffs row");
      require(vals.size() == 3, "each coeffs row must have 3 entries");
      coeffs.push_back({vals[0], vals[1], vals[2]});
    }
    return Distribution::density(number_array(j.at("breakpoints"), "breakpoints"),
                                 std::move(coeffs));
  }
  if (type == "mixture") {
    check_keys(j, {"type", "components"});
    require(j.contains("components") && j.at("components").is_array(),
            "mixture needs a 'components' array");
    std::vector<WeightedComponent> comps;
    for (const auto& jc : j.at("components")) {
      require(jc.is_object(), "mixture component must be an object");
      check_keys(jc, {"weight", "dist"});
      require(jc.contains("weight") && jc.at("weight").is_number(),
              "mixture component needs a numeric 'weight'");
      require(jc.contains("dist"), "mixture component needs a 'dist'");
      comps.push_back({jc.at("weight").get<double>(), parse(jc.at("dist"), depth + 1)});
    }
    return Distribution::mixture(std::move(comps));
  }
  throw std::invalid_argument("unknown distribution type '" + type + "'");
}

}  // namespace

Distribution distribution_from_json(const nlohmann::json& j) { return parse(j, 0); }

nlohmann::json distribution_to_json(const Distribution& d) {
  json j;
  if (const auto* dd = d.as_discrete()) {
    j["type"] = "discrete";
    j["atoms"] = dd->atoms();
    j["probs"] = dd->probs();
    return j;
  }
  if (const auto* pd = d.as_density()) {
    j["type"] = "density";
    j["breakpoints"] = pd->breakpoints();
    json rows = json::array();
    for (const auto& c : pd->coeffs()) rows.push_back({c[0], c[1], c[2]});
    j["coeffs"] = std::move(rows);
    return j;
  }
  j["type"] = "mixture";
  json comps = json::array();
  for (const auto& c : d.as_mixture()->components()) {
    json jc;
    jc["weight"] = c.weight;
    jc["dist"] = distribution_to_json(c.dist);
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j;
}

Distribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  in >> j;
  return distribution_from_json(j);
}

void save_distribution(const Distribution& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << distribution_to_json(d).dump(2) << "\n";
}

}  // namespace sqbias
