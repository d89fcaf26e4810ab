#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "sqbias/json_io.hpp"
#include "sqbias/lawgen.hpp"
#include "test_helpers.hpp"

using namespace sqbias;
using nlohmann::json;

TEST_CASE("parse the three wire formats") {
  const auto d = distribution_from_json(
      json::parse(R"({"type":"discrete","atoms":[-1,1],"probs":[0.5,0.5]})"));
  CHECK(d.as_discrete() != nullptr);

  const auto p = distribution_from_json(json::parse(
      R"({"type":"density","breakpoints":[-1,1],"coeffs":[[0.5,0,0]]})"));
  CHECK(p.as_density() != nullptr);
  CHECK(p.cdf(0.0) == 0.5);

  const auto m = distribution_from_json(json::parse(
      R"({"type":"mixture","components":[
            {"weight":0.5,"dist":{"type":"discrete","atoms":[0],"probs":[1]}},
            {"weight":0.5,"dist":{"type":"density","breakpoints":[-1,1],"coeffs":[[0.5,0,0]]}}]})"));
  CHECK(m.as_mixture() != nullptr);
  CHECK(m.cdf(0.0) == 0.25);

  // field order is irrelevant
  const auto r = distribution_from_json(
      json::parse(R"({"probs":[0.5,0.5],"atoms":[-1,1],"type":"discrete"})"));
  CHECK(r.as_discrete() != nullptr);
}

TEST_CASE("unknown fields and malformed input are rejected") {
  CHECK_THROWS_AS(
      distribution_from_json(json::parse(
          R"({"type":"discrete","atoms":[0],"probs":[1],"mean":0})")),
      std::invalid_argument);
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"type":"pdf"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"([1,2,3])")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      distribution_from_json(json::parse(
          R"({"type":"discrete","atoms":[0,"x"],"probs":[0.5,0.5]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      distribution_from_json(json::parse(
          R"({"type":"density","breakpoints":[0,1],"coeffs":[[1,0]]})")),
      std::invalid_argument);
  // invariant violations surface as the same error type
  CHECK_THROWS_AS(
      distribution_from_json(json::parse(
          R"({"type":"discrete","atoms":[0,1],"probs":[0.5,0.4]})")),
      std::invalid_argument);
}

TEST_CASE("serialization round-trips random laws") {
  SplitMix64 rng(113);
  for (int i = 0; i < 25; ++i) {
    const Distribution d = random_standardized_law(rng);
    const Distribution back = distribution_from_json(distribution_to_json(d));
    const auto* a = d.as_discrete();
    const auto* b = back.as_discrete();
    REQUIRE(b != nullptr);
    REQUIRE(a->size() == b->size());
    for (std::size_t k = 0; k < a->size(); ++k) {
      CHECK(a->atoms()[k] == b->atoms()[k]);
      CHECK(a->probs()[k] == b->probs()[k]);
    }
  }
  // a mixture with a density component
  const Distribution mix = Distribution::mixture(
      {{0.5, Distribution::uniform(-1.0, 1.0)}, {0.5, Distribution::rademacher()}});
  const Distribution back = distribution_from_json(distribution_to_json(mix));
  CHECK(sqbias::testing::sup_cdf_diff(mix, back) == 0.0);
}
