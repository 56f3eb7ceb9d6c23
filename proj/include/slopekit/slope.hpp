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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slopekit/metric_space.hpp"
#include "slopekit/scalar_field.hpp"

namespace slopekit {

// Slopes on a finite metric space.
//
// The global slope at x is max_{y != x} [f(x) - f(y)]^+ / d(x,y). Every
// point of a finite space is isolated, so the local slope is taken over an
// explicit NeighborhoodSystem instead of a limit. Points outside dom f
// contribute [f(x) - ∞]^+ = 0 and an empty index set yields 0.

enum class SlopeKind { kLocal, kGlobal };

double local_slope(const ScalarField& f, const NeighborhoodSystem& nbhd, PointIndex x);
double global_slope(const ScalarField& f, PointIndex x);

/// Slopes over all points; entries outside dom f are empty.
struct SlopeProfile {
  std::vector<std::optional<double>> local;
  std::vector<std::optional<double>> global;
};

SlopeProfile slope_profile(const ScalarField& f, const NeighborhoodSystem& nbhd);
std::vector<std::optional<double>> global_slopes(const ScalarField& f);
std::vector<std::optional<double>> local_slopes(const ScalarField& f, const NeighborhoodSystem& nbhd);

/// { x : f(x) <= inf f + eps }.
PointSet eps_argmin(const ScalarField& f, double eps);

/// L_eps of the local slope.
PointSet eps_crit(const ScalarField& f, const NeighborhoodSystem& nbhd, double eps);

/// L_eps of the global slope. Members are re-checked against
/// f(y) >= f(x) - eps d(y,x) for all y; a failure throws FatalFinding.
PointSet eps_Crit(const ScalarField& f, double eps);

/// x -> min_y f(y) + eps d(y,x): the largest eps-Lipschitz minorant of f.
/// Finite everywhere for proper f.
ScalarField pasch_hausdorff(const ScalarField& f, double eps);

/// { x : pasch_hausdorff(f, eps)(x) = f(x) } up to tolerance.
PointSet coincidence_set(const ScalarField& f, double eps);

/// min(g, lambda) pointwise.
ScalarField truncate(const ScalarField& g, double lambda);

/// x -> -log d(x, a), with +∞ at a itself.
ScalarField log_distance_field(const SpacePtr& space, PointIndex center);

/// { x in dom f : f(x) - g(x) <= lambda }, where g(x) = +∞ counts as
/// f(x) - g(x) = -∞ and is therefore included.
PointSet sublevel_diff(const ScalarField& f, const ScalarField& g, double lambda);

/// An induced metric subspace plus the map back to parent indices.
struct Subspace {
  SpacePtr space;
  /// parent[k] is the parent index of subspace point k (sorted).
  std::vector<PointIndex> parent;

  std::optional<PointIndex> local_index(PointIndex parent_index) const;
  /// Restricts another field on the parent space onto this subspace.
  ScalarField restrict(const ScalarField& f) const;
  NeighborhoodSystem restrict(const NeighborhoodSystem& nbhd) const;
};

Subspace induced_subspace(const MetricSpace& space, std::span<const PointIndex> subset);

struct Restriction {
  Subspace subspace;
  ScalarField field;
};

/// f restricted to `subset` (nonempty); throws InputError on empty subset.
Restriction restrict(const ScalarField& f, std::span<const PointIndex> subset);

PointSet set_intersection(std::span<const PointIndex> a, std::span<const PointIndex> b);

}  // namespace slopekit
