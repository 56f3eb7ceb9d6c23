// Copyright 2026 The slopekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "slopekit/errors.hpp"
#include "slopekit/generator.hpp"
#include "slopekit/io.hpp"
#include "slopekit/rng.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/suite.hpp"

using namespace slopekit;

TEST_CASE("Rng is deterministic and splittable") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(Rng::derive(1, 0) != Rng::derive(1, 1));
  CHECK(Rng::derive(1, 0) != Rng::derive(2, 0));
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(c.index(5) < 5);
  }
}

TEST_CASE("gen_random_instance edge cases") {
  const Instance one = gen_random_instance(0, 1, MetricKind::kMatrix);
  CHECK(one.space->size() == 1);
  CHECK(global_slope(one.field("f"), 0) == 0.0);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance g = gen_random_instance(s, 6, MetricKind::kGraph);
    CHECK(validate_metric(g.space->matrix()).ok());
  }

  FieldSpec all_inf;
  all_inf.p_inf = 1.0;
  const Instance improper = gen_random_instance(3, 4, MetricKind::kGraph, all_inf);
  CHECK_FALSE(improper.field("f").is_proper());
  CHECK_THROWS_AS(eps_argmin(improper.field("f"), 0.1), DomainError);

  CHECK_THROWS_AS(gen_random_instance(0, 0, MetricKind::kGraph), ParameterError);
  CHECK_THROWS_AS(gen_random_instance(0, 1, MetricKind::kGrid), ParameterError);
  FieldSpec bad;
  bad.p_inf = 1.5;
  CHECK_THROWS_AS(gen_random_instance(0, 3, MetricKind::kGraph, bad), ParameterError);
}

TEST_CASE("generated improper fields are repaired when p_inf < 1") {
  FieldSpec spec;
  spec.p_inf = 0.95;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = gen_random_instance(s, 2, MetricKind::kMatrix, spec);
    CHECK(inst.field("f").is_proper());
    CHECK(inst.field("g").is_proper());
  }
}

TEST_CASE("generated field values sit on the dyadic grid") {
  const Instance inst = gen_random_instance(9, 12, MetricKind::kMatrix);
  const ScalarField f = inst.field("f");
  for (ExtReal v : f.values()) {
    const double scaled = std::ldexp(v.raw(), 20);
    CHECK(scaled == std::floor(scaled));
  }
}

TEST_CASE("instances regenerate exactly and round-trip through JSON") {
  for (MetricKind kind : {MetricKind::kMatrix, MetricKind::kGraph, MetricKind::kGrid}) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      FieldSpec spec;
      spec.p_inf = 0.2;
      const Instance a = gen_random_instance(s, 2 + s % 10, kind, spec);
      const Instance b = gen_random_instance(s, 2 + s % 10, kind, spec);
      CHECK(a.same_data(b));
      const std::string text = to_json(a).dump();
      CHECK(text == to_json(b).dump());
      const Instance back = instance_from_json(Json::parse(text));
      CHECK(back.same_data(a));
      CHECK(to_json(back).dump() == text);
      for (PointIndex i = 0; i < a.space->size(); ++i) {
        for (PointIndex j = 0; j < a.space->size(); ++j) CHECK(back.space->distance(i, j) == a.space->distance(i, j));
      }
      CHECK(back.nbhd == a.nbhd);
    }
  }
}

TEST_CASE("provenance records the generator and algorithm") {
  const Instance inst = gen_random_instance(5, 4, MetricKind::kGrid);
  const Json p = Json::parse(inst.provenance);
  CHECK(p["generator"] == "gen_random_instance");
  CHECK(p["algorithm"] == Rng::kAlgorithm);
  CHECK(p["kind"] == "grid");
}

TEST_CASE("instance_from_json rejects malformed input") {
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"metric": {"kind": "matrix", "dist": [[0]]}})")), InputError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"points": ["a"], "metric": {"kind": "torus"}})")), InputError);
  CHECK_THROWS_AS(
      instance_from_json(Json::parse(R"({"points": ["a", "b"], "metric": {"kind": "matrix", "dist": [[0, 1], [2, 0]]}})")),
      InputError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(
                      R"({"points": ["a", "b"], "metric": {"kind": "matrix", "dist": [[0, 1], [1, 0]]},
                          "fields": {"f": [0, "-inf"]}})")),
                  InputError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(
                      R"({"points": ["a", "b"], "metric": {"kind": "graph", "edges": [[0, 5, 1.0]]}})")),
                  InputError);
  const Instance ok = instance_from_json(Json::parse(
      R"({"points": ["a", "b"], "metric": {"kind": "matrix", "dist": [[0, 1], [1, 0]]},
          "fields": {"f": [0, "inf"]}})"));
  CHECK(ok.field("f")[1].is_infinite());
  CHECK(ok.nbhd == all_neighborhoods(2));
  CHECK_THROWS_AS(ok.field("g"), InputError);
}

TEST_CASE("gen_dominated_pair constructors") {
  const Instance inst = gen_random_instance(17, 9, MetricKind::kGraph);
  const ScalarField f = inst.field("f");

  const DominatedPair flat = gen_dominated_pair(1, f, DominationMode::kScale, std::nullopt, 0.0);
  for (PointIndex x = 0; x < f.size(); ++x) CHECK(global_slope(flat.g, x) == 0.0);

  std::vector<double> sorted = f.raw();
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const DominatedPair trunc = gen_dominated_pair(2, f, DominationMode::kTruncate, median);
  CHECK(trunc.g == truncate(f, median));
  CHECK_FALSE(find_domination_failure(f, trunc.g).has_value());

  const DominatedPair comp = gen_dominated_pair(3, f, DominationMode::kCompose, median, 0.7);
  CHECK(comp.g == scaled(truncate(f, median), 0.7));
  CHECK_FALSE(find_domination_failure(f, comp.g).has_value());

  CHECK_THROWS_AS(gen_dominated_pair(1, f, DominationMode::kScale, std::nullopt, 1.5), ParameterError);
  CHECK_THROWS_AS(gen_dominated_pair(1, ScalarField::constant(inst.space, ExtReal::infinity()), DominationMode::kScale),
                  DomainError);
}

TEST_CASE("find_domination_failure sees steeper fields") {
  const Instance inst = gen_random_instance(4, 6, MetricKind::kMatrix);
  const ScalarField f = inst.field("f");
  CHECK(find_domination_failure(f, scaled(f, 2.0)).has_value());
}

TEST_CASE("gen_pl_convex respects the gap bounds") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PLConvex f = gen_pl_convex(s, 6, 0.05);
    CHECK(f.knots().size() >= 1);
    CHECK(f.knots().size() <= 6);
    for (std::size_t i = 1; i < f.knots().size(); ++i) CHECK(f.knots()[i] - f.knots()[i - 1] >= 0.05);
    for (std::size_t i = 1; i < f.slopes().size(); ++i) CHECK(f.slopes()[i] - f.slopes()[i - 1] >= 0.05);
  }
}

TEST_CASE("suite config parsing") {
  const SuiteConfig c = suite_config_from_json(
      Json::parse(R"({"instances": 5, "kinds": ["grid"], "groups": ["evp"], "mutation": "evp_noncritical"})"));
  CHECK(c.instances == 5);
  CHECK(c.kinds == std::vector<MetricKind>{MetricKind::kGrid});
  CHECK(c.mutation == Mutation::kEvpNoncritical);
  CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"groups": ["nope"]})")), ParameterError);
  CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"mutation": "nope"})")), ParameterError);
  CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"instances": "many"})")), InputError);
  CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"p_inf": [1.0]})")), ParameterError);
  CHECK(suite_config_from_json(to_json(c)).instances == 5);
}

TEST_CASE("suite with zero instances is empty and ok") {
  SuiteConfig c;
  c.instances = 0;
  const SuiteReport r = run_suite(c);
  CHECK(r.evaluations() == 0);
  CHECK(r.ok());
}

TEST_CASE("suite passes and is deterministic") {
  SuiteConfig c;
  c.instances = 120;
  c.seed = 31;
  c.threads = 3;
  const SuiteReport a = run_suite(c);
  CHECK(a.ok());
  CHECK(a.evaluations() > 0);
  c.threads = 1;
  const SuiteReport b = run_suite(c);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a).rfind("check,passed,failed\n", 0) == 0);
}

TEST_CASE("suite detects each mutation with an archived counterexample") {
  const std::pair<Mutation, std::string> cases[] = {
      {Mutation::kAsymmetricNeighborhood, "metric.nbhd_symmetric"},
      {Mutation::kTruncateSinglePoint, "slope.truncation"},
      {Mutation::kEvpNoncritical, "evp.critical"},
  };
  for (const auto& [mutation, check] : cases) {
    SuiteConfig c;
    c.instances = 100;
    c.mutation = mutation;
    const SuiteReport r = run_suite(c);
    CHECK(r.tally(check).failed > 0);
    const auto it = std::find_if(r.counterexamples.begin(), r.counterexamples.end(),
                                 [&](const Counterexample& ce) { return ce.check == check; });
    REQUIRE(it != r.counterexamples.end());
    CHECK(it->witness.contains("instance"));
    CHECK(it->witness.contains("values"));
    // The archived instance replays.
    CHECK_NOTHROW(instance_from_json(it->witness["instance"]));
  }
}
