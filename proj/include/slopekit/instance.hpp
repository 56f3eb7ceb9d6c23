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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "slopekit/ext_real.hpp"
#include "slopekit/metric_space.hpp"
#include "slopekit/scalar_field.hpp"

namespace slopekit {

struct MatrixMetric {
  Matrix dist;
  friend bool operator==(const MatrixMetric&, const MatrixMetric&) = default;
};

struct GraphMetric {
  std::vector<WeightedEdge> edges;
  friend bool operator==(const GraphMetric& a, const GraphMetric& b) {
    if (a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      const auto& x = a.edges[i];
      const auto& y = b.edges[i];
      if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
    }
    return true;
  }
};

struct GridMetric {
  std::vector<GridAxis> axes;
  double p = 2.0;
  friend bool operator==(const GridMetric& a, const GridMetric& b) {
    if (a.p != b.p || a.axes.size() != b.axes.size()) return false;
    for (std::size_t i = 0; i < a.axes.size(); ++i) {
      if (a.axes[i].lower != b.axes[i].lower || a.axes[i].upper != b.axes[i].upper ||
          a.axes[i].resolution != b.axes[i].resolution) {
        return false;
      }
    }
    return true;
  }
};

using MetricSpec = std::variant<MatrixMetric, GraphMetric, GridMetric>;

struct BallNeighborhoods {
  double r = 1.0;
  friend bool operator==(const BallNeighborhoods&, const BallNeighborhoods&) = default;
};
struct ExplicitNeighborhoods {
  std::vector<std::pair<PointIndex, PointIndex>> adj;
  friend bool operator==(const ExplicitNeighborhoods&, const ExplicitNeighborhoods&) = default;
};
struct AllNeighborhoods {
  friend bool operator==(const AllNeighborhoods&, const AllNeighborhoods&) = default;
};

using NeighborhoodSpec = std::variant<BallNeighborhoods, ExplicitNeighborhoods, AllNeighborhoods>;

/// A metric space, a neighbourhood system and named fields, together with
/// the recipe that produced them.
struct Instance {
  std::vector<std::string> points;
  MetricSpec metric;
  NeighborhoodSpec neighborhoods;
  std::map<std::string, std::vector<ExtReal>> field_values;
  std::optional<std::uint64_t> seed;
  /// Free-form generator description, stored as a JSON text.
  std::string provenance;

  SpacePtr space;
  NeighborhoodSystem nbhd;

  /// Builds `space` and `nbhd` from the specs; throws InputError.
  void realize();

  ScalarField field(const std::string& name) const;
  bool has_field(const std::string& name) const { return field_values.count(name) > 0; }
  void set_field(const std::string& name, const ScalarField& f);

  /// Same data, ignoring the realised caches.
  bool same_data(const Instance& other) const;
};

Instance make_instance(std::vector<std::string> points, MetricSpec metric, NeighborhoodSpec nbhd,
                       std::map<std::string, std::vector<ExtReal>> fields = {});

NeighborhoodSystem realize_neighborhoods(const NeighborhoodSpec& spec, const MetricSpace& space);

}  // namespace slopekit
