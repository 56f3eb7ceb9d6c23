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
#include "slopekit/generator.hpp"
#include "slopekit/rng.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/tolerance.hpp"

using namespace slopekit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpacePtr e3() { return make_space({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}); }

NeighborhoodSystem e3_path() { return NeighborhoodSystem({{1}, {0, 2}, {1}}); }

ScalarField field(const SpacePtr& s, std::vector<double> v) {
  std::vector<ExtReal> out;
  for (double x : v) out.push_back(std::isinf(x) ? ExtReal::infinity() : ExtReal{x});
  return ScalarField(s, std::move(out));
}

oracle::Values values(const ScalarField& f) { return f.raw(); }

oracle::Matrix matrix(const ScalarField& f) { return f.space().matrix(); }

std::vector<std::vector<std::size_t>> lists(const NeighborhoodSystem& n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < n.size(); ++x) out.push_back(n.neighbors(x));
  return out;
}

}  // namespace

TEST_CASE("ExtReal conventions") {
  CHECK_THROWS_AS(ExtReal(std::nan("")), DomainError);
  CHECK_THROWS_AS(ExtReal(-kInf), DomainError);
  CHECK_THROWS_AS(difference(ExtReal::infinity(), ExtReal::infinity()), DomainError);
  CHECK(difference(ExtReal{1.0}, ExtReal::infinity()) == -kInf);
  CHECK((ExtReal{1.0} + ExtReal::infinity()).is_infinite());
  CHECK(positive_part(-2.0) == 0.0);
  CHECK(scale(0.0, ExtReal::infinity()) == ExtReal{0.0});
  CHECK_THROWS_AS(ExtReal::infinity().value(), DomainError);
}

TEST_CASE("ScalarField basics") {
  const auto s = e3();
  const ScalarField f = field(s, {kInf, 1, 3});
  CHECK(f.domain() == PointSet{1, 2});
  CHECK(f.infimum() == 1.0);
  CHECK(f.supremum_on_domain() == 3.0);
  CHECK_THROWS_AS(ScalarField(s, std::vector<ExtReal>{1.0}), ShapeError);
  const ScalarField none = ScalarField::constant(s, ExtReal::infinity());
  CHECK_FALSE(none.is_proper());
  CHECK_THROWS_AS(none.infimum(), DomainError);
  CHECK_THROWS_AS(difference(f, f), DomainError);
}

TEST_CASE("local and global slopes on E3") {
  const auto s = e3();
  const ScalarField f = field(s, {0, 1, 3});
  const auto nb = e3_path();
  CHECK(local_slope(f, nb, 2) == 2.0);
  CHECK(local_slope(f, nb, 0) == 0.0);
  CHECK(global_slope(f, 2) == 2.0);
  CHECK(global_slope(f, 1) == 1.0);
  CHECK(global_slope(f, 0) == 0.0);
  const ScalarField c = ScalarField::constant(s, ExtReal{4.0});
  for (PointIndex x = 0; x < 3; ++x) CHECK(local_slope(c, nb, x) == 0.0);
}

TEST_CASE("slopes outside the domain and isolated points") {
  const auto s = e3();
  const ScalarField f = field(s, {kInf, 1, 3});
  CHECK_THROWS_AS(global_slope(f, 0), DomainError);
  CHECK_THROWS_AS(local_slope(f, e3_path(), 0), DomainError);
  // A neighbour outside dom f contributes nothing.
  const ScalarField g = field(s, {0, kInf, 3});
  CHECK(local_slope(g, e3_path(), 2) == 0.0);
  const NeighborhoodSystem empty({{}, {}, {}});
  CHECK(local_slope(field(s, {0, 1, 3}), empty, 2) == 0.0);
  const SlopeProfile prof = slope_profile(f, e3_path());
  CHECK_FALSE(prof.global[0].has_value());
  CHECK(*prof.global[2] == 2.0);
}

TEST_CASE("eps_argmin, eps_crit and eps_Crit on E3") {
  const auto s = e3();
  const ScalarField f = field(s, {0, 1, 3});
  CHECK(eps_argmin(f, 1.0) == PointSet{0, 1});
  CHECK(eps_argmin(f, 0.0) == PointSet{0});
  CHECK(eps_argmin(f, 3.0) == PointSet{0, 1, 2});
  CHECK(eps_Crit(f, 1.0) == PointSet{0, 1});
  CHECK(eps_Crit(f, 2.0) == PointSet{0, 1, 2});
  CHECK(eps_crit(f, e3_path(), 0.0) == PointSet{0});
  CHECK_THROWS_AS(eps_Crit(f, -1.0), ParameterError);
  CHECK_THROWS_AS(eps_crit(f, e3_path(), -0.5), ParameterError);
  CHECK_THROWS_AS(eps_argmin(ScalarField::constant(s, ExtReal::infinity()), 1.0), DomainError);
}

TEST_CASE("pasch_hausdorff on E3") {
  const auto s = e3();
  const ScalarField f = field(s, {0, 1, 3});
  const ScalarField g = pasch_hausdorff(f, 1.0);
  CHECK(g[0] == ExtReal{0.0});
  CHECK(g[1] == ExtReal{1.0});
  CHECK(g[2] == ExtReal{2.0});
  CHECK(coincidence_set(f, 1.0) == PointSet{0, 1});
  // Already 2-Lipschitz: the regularisation is f itself.
  CHECK(pasch_hausdorff(f, 2.0) == f);
  const ScalarField one = field(s, {kInf, 5, kInf});
  const ScalarField h = pasch_hausdorff(one, 0.5);
  CHECK(h[0].raw() == 5.5);
  CHECK(h[2].raw() == 5.5);
  CHECK_THROWS_AS(pasch_hausdorff(f, 0.0), ParameterError);
}

TEST_CASE("truncate on E3") {
  const auto s = e3();
  const ScalarField g = field(s, {0, 1, 3});
  const ScalarField g1 = truncate(g, 1.0);
  CHECK(g1 == field(s, {0, 1, 1}));
  CHECK(global_slope(g, 2) == 2.0);
  CHECK(global_slope(g1, 2) == 0.5);
  CHECK(truncate(g, 3.0) == g);
  const ScalarField low = truncate(g, -1.0);
  for (PointIndex x = 0; x < 3; ++x) CHECK(global_slope(low, x) == 0.0);
}

TEST_CASE("log_distance_field") {
  const auto s = e3();
  const ScalarField phi = log_distance_field(s, 0);
  CHECK(phi[0].is_infinite());
  CHECK(phi[1].raw() == 0.0);
  CHECK(phi[2].raw() == doctest::Approx(-std::log(2.0)));
  CHECK(global_slope(phi, 1) == doctest::Approx(std::log(2.0)));
  CHECK(global_slope(phi, 1) <= 1.0);
  CHECK(global_slope(phi, 2) == 0.0);
  const auto two = make_space({"x", "y"}, {{0, 3}, {3, 0}});
  CHECK(global_slope(log_distance_field(two, 0), 1) == 0.0);
  CHECK_THROWS_AS(log_distance_field(make_space({"x"}, {{0}}), 0), InputError);
}

TEST_CASE("sublevel_diff") {
  const auto s = e3();
  const ScalarField f = field(s, {0, 1, 3});
  CHECK(sublevel_diff(f, field(s, {0, 0.5, 1.5}), 1.0) == PointSet{0, 1});
  CHECK(sublevel_diff(f, field(s, {0, 0.5, 1.5}), 1.5) == PointSet{0, 1, 2});
  CHECK(sublevel_diff(f, ScalarField::constant(s, ExtReal::infinity()), -100.0) == PointSet{0, 1, 2});
  CHECK(sublevel_diff(field(s, {kInf, 1, 3}), field(s, {0, 0, 0}), 10.0) == PointSet{1, 2});
}

TEST_CASE("restrict") {
  const auto s = e3();
  const ScalarField f = field(s, {0, 1, 3});
  const PointSet all{0, 1, 2};
  const Restriction whole = restrict(f, all);
  for (PointIndex x = 0; x < 3; ++x) CHECK(global_slope(whole.field, x) == global_slope(f, x));
  const PointSet bc{1, 2};
  const Restriction r = restrict(f, bc);
  CHECK(r.subspace.parent == std::vector<PointIndex>{1, 2});
  CHECK(global_slope(r.field, *r.subspace.local_index(2)) == 2.0);
  CHECK(global_slope(r.field, *r.subspace.local_index(1)) == 0.0);
  CHECK_FALSE(r.subspace.local_index(0).has_value());
  const NeighborhoodSystem nb = r.subspace.restrict(e3_path());
  CHECK(nb.neighbors(0) == std::vector<PointIndex>{1});
  CHECK_THROWS_AS(restrict(f, PointSet{}), InputError);
}

TEST_CASE("property: slopes agree with the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    FieldSpec spec;
    spec.p_inf = 0.2;
    const MetricKind kind = static_cast<MetricKind>(seed % 3);
    const Instance inst = gen_random_instance(seed, 2 + seed % 10, kind, spec);
    const ScalarField f = inst.field("f");
    const auto v = values(f);
    const auto d = matrix(f);
    const auto nb = lists(inst.nbhd);
    for (PointIndex x : f.domain()) {
      CHECK(global_slope(f, x) == oracle::global_slope(v, d, x));
      CHECK(local_slope(f, inst.nbhd, x) == oracle::local_slope(v, d, nb, x));
    }
    for (double eps : {0.0, 0.3, 1.0, 2.5}) {
      CHECK(eps_Crit(f, eps) == oracle::crit_by_definition(v, d, eps, tolerance()));
    }
  }
}

TEST_CASE("property: pasch_hausdorff is finite, eps-Lipschitz and below f") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FieldSpec spec;
    spec.p_inf = 0.3;
    const Instance inst = gen_random_instance(seed, 1 + seed % 9, MetricKind::kMatrix, spec);
    const ScalarField f = inst.field("f");
    const double eps = 0.1 + 0.05 * static_cast<double>(seed % 40);
    const ScalarField g = pasch_hausdorff(f, eps);
    CHECK(g.is_finite());
    for (PointIndex x = 0; x < f.size(); ++x) {
      CHECK(g[x] <= f[x]);
      for (PointIndex y = 0; y < f.size(); ++y) {
        CHECK(std::abs(g[x].raw() - g[y].raw()) <= eps * f.space().distance(x, y) + 1e-12);
      }
    }
  }
}

TEST_CASE("property: sublevel_diff matches the domain convention") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FieldSpec spec;
    spec.p_inf = 0.25;
    const Instance inst = gen_random_instance(seed, 1 + seed % 8, MetricKind::kGraph, spec);
    const ScalarField f = inst.field("f");
    const ScalarField g = inst.field("g");
    const double lambda = -1.0 + 0.05 * static_cast<double>(seed);
    PointSet want;
    for (PointIndex x = 0; x < f.size(); ++x) {
      if (f[x].is_infinite()) continue;
      if (g[x].is_infinite() || f[x].raw() - g[x].raw() <= lambda + tolerance()) want.push_back(x);
    }
    CHECK(sublevel_diff(f, g, lambda) == want);
  }
}
