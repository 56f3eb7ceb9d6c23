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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "slopekit/errors.hpp"
#include "slopekit/metric_space.hpp"
#include "slopekit/rng.hpp"

using namespace slopekit;

namespace {

const Matrix kE3{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};

GridSpace grid(std::vector<GridAxis> axes, double p) { return grid_space(axes, p); }

}  // namespace

TEST_CASE("validate_metric accepts metrics") {
  CHECK(validate_metric({{0}}).ok());
  CHECK(validate_metric(kE3).ok());
}

TEST_CASE("validate_metric reports a triangle violation with its witness") {
  const MetricReport rep = validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  REQUIRE(rep.violations.size() == 1);
  const MetricViolation& v = rep.violations.front();
  CHECK(v.kind == ViolationKind::kTriangle);
  CHECK(v.i == 0);
  CHECK(v.j == 2);
  REQUIRE(v.via.has_value());
  CHECK(*v.via == 1);
  CHECK(v.lhs == 3.0);
  CHECK(v.rhs == 2.0);
}

TEST_CASE("validate_metric lists every axiom failure") {
  const MetricReport rep = validate_metric({{1, 2, 0}, {-1, 0, 1}, {0, 1, 0}});
  auto count = [&](ViolationKind k) {
    return std::count_if(rep.violations.begin(), rep.violations.end(), [&](const auto& v) { return v.kind == k; });
  };
  CHECK(count(ViolationKind::kNonzeroDiagonal) == 1);
  CHECK(count(ViolationKind::kAsymmetry) >= 1);
  CHECK(count(ViolationKind::kNegativeEntry) == 1);
  CHECK(count(ViolationKind::kZeroOffDiagonal) >= 1);
}

TEST_CASE("validate_metric rejects malformed matrices") {
  CHECK_THROWS_AS(validate_metric({{0, 1}, {1}}), ShapeError);
  CHECK_THROWS_AS(validate_metric({{0, std::numeric_limits<double>::infinity()}, {1, 0}}), ParameterError);
}

TEST_CASE("MetricSpace enforces axioms and unique ids") {
  CHECK_NOTHROW(MetricSpace({"a", "b", "c"}, kE3));
  CHECK_THROWS_AS(MetricSpace({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), InputError);
  CHECK_THROWS_AS(MetricSpace({"a", "a", "c"}, kE3), InputError);
  CHECK_THROWS_AS(MetricSpace({"a", "b"}, kE3), ShapeError);
  const MetricSpace s({"a", "b", "c"}, kE3);
  CHECK(s.index_of("c") == 2);
  CHECK_FALSE(s.index_of("z").has_value());
  CHECK(s.diameter() == 2.0);
}

TEST_CASE("shortest_path_space on the spec graphs") {
  const std::vector<WeightedEdge> path{{0, 1, 1.0}, {1, 2, 1.0}};
  CHECK(shortest_path_space({"a", "b", "c"}, path)->distance(0, 2) == 2.0);

  CHECK(shortest_path_space({"solo"}, {})->size() == 1);

  const std::vector<WeightedEdge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}};
  CHECK(shortest_path_space({"a", "b", "c"}, tri)->distance(0, 2) == 2.0);
}

TEST_CASE("shortest_path_space errors") {
  const std::vector<WeightedEdge> bad_weight{{0, 1, 0.0}};
  CHECK_THROWS_AS(shortest_path_space({"a", "b"}, bad_weight), ParameterError);
  const std::vector<WeightedEdge> split{{0, 1, 1.0}};
  try {
    shortest_path_space({"a", "b", "c"}, split);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("'c'") != std::string::npos);
  }
}

TEST_CASE("shortest_path_space matches exhaustive path enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.index(6);
    std::vector<WeightedEdge> edges;
    std::vector<std::tuple<std::size_t, std::size_t, double>> raw;
    for (std::size_t v = 1; v < n; ++v) {
      const double w = rng.uniform(0.1, 2.0);
      const std::size_t u = rng.index(v);
      edges.push_back({u, v, w});
      raw.emplace_back(u, v, w);
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (rng.bernoulli(0.3)) {
          const double w = rng.uniform(0.1, 2.0);
          edges.push_back({u, v, w});
          raw.emplace_back(u, v, w);
        }
      }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    const SpacePtr s = shortest_path_space(names, edges);
    const oracle::Matrix want = oracle::path_enumeration(n, raw);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(s->distance(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));
    }
    CHECK(validate_metric(s->matrix()).ok());
  }
}

TEST_CASE("ball_neighborhoods") {
  const MetricSpace s({"a", "b", "c"}, kE3);
  const NeighborhoodSystem n1 = ball_neighborhoods(s, 1.0);
  CHECK(n1.neighbors(0) == std::vector<PointIndex>{1});
  CHECK(n1.neighbors(1) == std::vector<PointIndex>{0, 2});
  CHECK(n1.neighbors(2) == std::vector<PointIndex>{1});
  CHECK(ball_neighborhoods(s, 2.0) == all_neighborhoods(3));
  const NeighborhoodSystem none = ball_neighborhoods(s, 0.5);
  for (PointIndex x = 0; x < 3; ++x) CHECK(none.neighbors(x).empty());
  CHECK_THROWS_AS(ball_neighborhoods(s, 0.0), ParameterError);
  CHECK_THROWS_AS(ball_neighborhoods(s, -1.0), ParameterError);
}

TEST_CASE("NeighborhoodSystem validation") {
  using Lists = std::vector<std::vector<PointIndex>>;
  CHECK_THROWS_AS(NeighborhoodSystem(Lists{{1}, {}}), InputError);
  CHECK_THROWS_AS(NeighborhoodSystem(Lists{{0}}), InputError);
  CHECK_THROWS_AS(NeighborhoodSystem(Lists{{3}, {}}), InputError);
  const auto asym = NeighborhoodSystem::from_lists_unchecked({{1}, {}});
  CHECK_FALSE(asym.is_symmetric());
  const std::vector<std::pair<PointIndex, PointIndex>> pairs{{0, 1}, {1, 2}};
  const NeighborhoodSystem path = NeighborhoodSystem::from_pairs(3, pairs);
  CHECK(path.is_symmetric());
  CHECK(path.pairs() == pairs);
  CHECK(path.contains(2, 1));
  CHECK_FALSE(path.contains(0, 2));
  const std::vector<PointIndex> sub{1, 2};
  const NeighborhoodSystem ind = path.induced(sub);
  CHECK(ind.neighbors(0) == std::vector<PointIndex>{1});
  CHECK(ind.neighbors(1) == std::vector<PointIndex>{0});
}

TEST_CASE("grid_space distances") {
  const GridSpace g1 = grid({{0.0, 1.0, 3}}, 2.0);
  REQUIRE(g1.space->size() == 3);
  CHECK(g1.coords[1][0] == 0.5);
  CHECK(g1.space->distance(0, 2) == 1.0);
  CHECK(g1.nbhd.neighbors(1) == std::vector<PointIndex>{0, 2});

  const GridSpace l1 = grid({{0.0, 1.0, 2}, {0.0, 1.0, 2}}, 1.0);
  CHECK(l1.space->distance(0, 3) == 2.0);
  const GridSpace linf = grid({{0.0, 1.0, 2}, {0.0, 1.0, 2}}, std::numeric_limits<double>::infinity());
  CHECK(linf.space->distance(0, 3) == 1.0);
  const GridSpace l2 = grid({{0.0, 1.0, 2}, {0.0, 1.0, 2}}, 2.0);
  CHECK(l2.space->distance(0, 3) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l2.space->id(1) == "(0,1)");
  CHECK(l2.nbhd.pairs().size() == 4);
}

TEST_CASE("grid_space errors") {
  CHECK_THROWS_AS(grid({{0.0, 1.0, 1}}, 2.0), ParameterError);
  CHECK_THROWS_AS(grid({{1.0, 0.0, 3}}, 2.0), ParameterError);
  CHECK_THROWS_AS(grid({{0.0, 1.0, 3}}, 0.5), ParameterError);
}

TEST_CASE("property: constructed spaces satisfy the axioms and ball systems are symmetric") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.index(10);
    Matrix w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.uniform(0.1, 3.0);
    }
    const Matrix d = metric_closure(w);
    CHECK(validate_metric(d).ok());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    const MetricSpace s(names, d);
    const NeighborhoodSystem b = ball_neighborhoods(s, rng.uniform(0.05, 3.0));
    CHECK(b.is_symmetric());
  }
}
