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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slopekit/convex1d.hpp"
#include "slopekit/instance.hpp"

namespace slopekit {

enum class MetricKind { kMatrix, kGraph, kGrid };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& s);

/// Field values are uniform on [lo, hi], rounded down to multiples of
/// 2^-grid_bits, and each replaced by +∞ with probability p_inf. When
/// p_inf < 1 and every value came out infinite, one point is reset to a
/// finite value so the field stays proper.
///
/// With the default grid and |values| < 4, r·f is exact for any scale
/// factor r carrying at most 30 significant bits.
struct FieldSpec {
  std::vector<std::string> names{"f", "g"};
  double p_inf = 0.0;
  double lo = 0.0;
  double hi = 3.0;
  int grid_bits = 20;
};

/// Random instance. Matrix metrics are shortest-path closures of random
/// symmetric weights; graph metrics come from a random spanning tree plus
/// extra edges; grid metrics are 1-D or 2-D l^p grids with exactly
/// n_points nodes.
Instance gen_random_instance(std::uint64_t seed, std::size_t n_points, MetricKind kind,
                             const FieldSpec& spec = {});

enum class DominationMode { kTruncate, kScale, kCompose };

std::string to_string(DominationMode mode);
DominationMode domination_mode_from_string(const std::string& s);

struct DominatedPair {
  ScalarField f;
  ScalarField g;
  DominationMode mode;
  std::optional<double> level;
  std::optional<double> factor;
};

/// g = truncate(f, λ), g = r·f (r in [0,1]) or g = r·truncate(f, λ), with
/// λ drawn between inf f and max f on dom f unless given. Domination
/// |∇̃g| <= |∇̃f| on dom f is re-verified by brute force before returning;
/// failure raises FatalFinding.
DominatedPair gen_dominated_pair(std::uint64_t seed, const ScalarField& f, DominationMode mode,
                                 std::optional<double> level = std::nullopt,
                                 std::optional<double> factor = std::nullopt);

/// Independent brute-force test of |∇̃g|(x) <= |∇̃f|(x) + tol on dom f.
/// Returns the first failing point, if any.
std::optional<PointIndex> find_domination_failure(const ScalarField& f, const ScalarField& g);

/// Random convex piecewise-linear function with 1..max_knots knots spaced
/// at least min_gap apart and slope increments of at least min_gap.
PLConvex gen_pl_convex(std::uint64_t seed, std::size_t max_knots = 6, double min_gap = 0.05);

}  // namespace slopekit
