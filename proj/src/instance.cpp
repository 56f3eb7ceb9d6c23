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

#include "slopekit/instance.hpp"

#include "slopekit/errors.hpp"

namespace slopekit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

NeighborhoodSystem realize_neighborhoods(const NeighborhoodSpec& spec, const MetricSpace& space) {
  return std::visit(Overloaded{
                        [&](const BallNeighborhoods& b) { return ball_neighborhoods(space, b.r); },
                        [&](const ExplicitNeighborhoods& e) {
                          return NeighborhoodSystem::from_pairs(space.size(), e.adj);
                        },
                        [&](const AllNeighborhoods&) { return all_neighborhoods(space.size()); },
                    },
                    spec);
}

void Instance::realize() {
  space = std::visit(Overloaded{
                         [&](const MatrixMetric& m) { return make_space(points, m.dist); },
                         [&](const GraphMetric& g) { return shortest_path_space(points, g.edges); },
                         [&](const GridMetric& g) { return grid_space(g.axes, g.p, points).space; },
                     },
                     metric);
  nbhd = realize_neighborhoods(neighborhoods, *space);
  for (const auto& [name, values] : field_values) {
    if (values.size() != points.size()) {
      throw InputError("field '" + name + "' has " + std::to_string(values.size()) + " values for " +
                       std::to_string(points.size()) + " points");
    }
  }
}

ScalarField Instance::field(const std::string& name) const {
  const auto it = field_values.find(name);
  if (it == field_values.end()) throw InputError("instance has no field named '" + name + "'");
  if (!space) throw InputError("instance has not been realised");
  return ScalarField(space, it->second);
}

void Instance::set_field(const std::string& name, const ScalarField& f) {
  if (f.size() != points.size()) throw ShapeError("field size does not match the instance");
  field_values[name] = f.values();
}

bool Instance::same_data(const Instance& other) const {
  return points == other.points && metric == other.metric && neighborhoods == other.neighborhoods &&
         field_values == other.field_values && seed == other.seed && provenance == other.provenance;
}

Instance make_instance(std::vector<std::string> points, MetricSpec metric, NeighborhoodSpec nbhd,
                       std::map<std::string, std::vector<ExtReal>> fields) {
  Instance inst;
  inst.points = std::move(points);
  inst.metric = std::move(metric);
  inst.neighborhoods = std::move(nbhd);
  inst.field_values = std::move(fields);
  inst.realize();
  return inst;
}

}  // namespace slopekit
