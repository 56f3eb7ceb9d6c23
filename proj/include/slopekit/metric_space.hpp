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

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace slopekit {

using PointIndex = std::size_t;
/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<PointIndex>;
using Matrix = std::vector<std::vector<double>>;

enum class ViolationKind {
  kAsymmetry,
  kNegativeEntry,
  kNonzeroDiagonal,
  kZeroOffDiagonal,
  kTriangle,
};

std::string to_string(ViolationKind kind);

struct MetricViolation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  /// Intermediate index for triangle violations: d(i,j) > d(i,via) + d(via,j).
  std::optional<std::size_t> via;
  double lhs = 0.0;
  double rhs = 0.0;

  std::string describe() const;
};

struct MetricReport {
  std::vector<MetricViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Lists every violated metric axiom instance. Throws ShapeError for a
/// non-square matrix and ParameterError for non-finite entries.
MetricReport validate_metric(const Matrix& dist);

/// Finite metric space. Immutable after construction.
class MetricSpace {
 public:
  /// Validates the axioms and point-id uniqueness; throws InputError.
  MetricSpace(std::vector<std::string> points, const Matrix& dist);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& id(PointIndex i) const { return points_.at(i); }
  std::optional<PointIndex> index_of(const std::string& id) const;

  double distance(PointIndex i, PointIndex j) const noexcept { return dist_[i * size() + j]; }
  Matrix matrix() const;
  double diameter() const noexcept;

 private:
  std::vector<std::string> points_;
  std::vector<double> dist_;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

SpacePtr make_space(std::vector<std::string> points, const Matrix& dist);

/// Symmetric neighbour relation over the points of a space.
class NeighborhoodSystem {
 public:
  NeighborhoodSystem() = default;

  /// Builds from per-point lists; requires symmetry, no self-loops and
  /// in-range indices. Throws InputError otherwise.
  explicit NeighborhoodSystem(std::vector<std::vector<PointIndex>> lists);

  /// Same as the constructor without the symmetry requirement. Only
  /// the fault-injection paths of the suite build asymmetric systems.
  static NeighborhoodSystem from_lists_unchecked(std::vector<std::vector<PointIndex>> lists);

  static NeighborhoodSystem from_pairs(std::size_t n,
                                       std::span<const std::pair<PointIndex, PointIndex>> pairs);

  std::size_t size() const noexcept { return lists_.size(); }
  const std::vector<PointIndex>& neighbors(PointIndex x) const { return lists_.at(x); }
  bool contains(PointIndex x, PointIndex y) const;
  bool is_symmetric() const;
  /// Undirected pairs (i < j) in lexicographic order.
  std::vector<std::pair<PointIndex, PointIndex>> pairs() const;

  /// Restriction to `subset` (sorted indices of this system), re-indexed
  /// by position in `subset`.
  NeighborhoodSystem induced(std::span<const PointIndex> subset) const;

  friend bool operator==(const NeighborhoodSystem&, const NeighborhoodSystem&) = default;

 private:
  struct Unchecked {};
  NeighborhoodSystem(std::vector<std::vector<PointIndex>> lists, Unchecked);

  std::vector<std::vector<PointIndex>> lists_;
};

struct WeightedEdge {
  PointIndex u = 0;
  PointIndex v = 0;
  double weight = 0.0;
};

/// All-pairs shortest-path metric of a connected graph with positive weights.
SpacePtr shortest_path_space(std::vector<std::string> vertices,
                             std::span<const WeightedEdge> edges);

/// Shortest-path closure of a symmetric nonnegative matrix (Floyd–Warshall).
Matrix metric_closure(const Matrix& weights);

/// neighbors(x) = { y != x : d(x,y) <= r }.
NeighborhoodSystem ball_neighborhoods(const MetricSpace& space, double r);

/// Every point neighbours every other point.
NeighborhoodSystem all_neighborhoods(std::size_t n);

struct GridAxis {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t resolution = 2;
};

struct GridSpace {
  SpacePtr space;
  NeighborhoodSystem nbhd;
  /// Node coordinates, row-major with the last axis varying fastest.
  std::vector<std::vector<double>> coords;

  std::size_t dimension() const noexcept { return coords.empty() ? 0 : coords.front().size(); }
};

/// Regular grid with the l^p metric (p in [1, inf]; pass +inf for the max
/// metric) and axis-adjacent neighbourhoods. When `ids` is empty the
/// nodes are named "(i,j,...)".
GridSpace grid_space(std::span<const GridAxis> axes, double p, std::vector<std::string> ids = {});

}  // namespace slopekit
