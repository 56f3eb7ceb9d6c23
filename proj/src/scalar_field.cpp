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

#include "slopekit/scalar_field.hpp"

#include <algorithm>
#include <limits>

#include "slopekit/errors.hpp"

namespace slopekit {

ScalarField::ScalarField(SpacePtr space, std::vector<ExtReal> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw InputError("scalar field needs a metric space");
  if (values_.size() != space_->size()) {
    throw ShapeError("field has " + std::to_string(values_.size()) + " values for " +
                     std::to_string(space_->size()) + " points");
  }
}

ScalarField::ScalarField(SpacePtr space, std::span<const double> values)
    : ScalarField(std::move(space), std::vector<ExtReal>(values.begin(), values.end())) {}

ScalarField ScalarField::constant(SpacePtr space, ExtReal value) {
  const std::size_t n = space->size();
  return ScalarField(std::move(space), std::vector<ExtReal>(n, value));
}

std::vector<double> ScalarField::raw() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](ExtReal v) { return v.raw(); });
  return out;
}

PointSet ScalarField::domain() const {
  PointSet dom;
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (values_[x].is_finite()) dom.push_back(x);
  }
  return dom;
}

bool ScalarField::is_proper() const noexcept {
  return std::any_of(values_.begin(), values_.end(), [](ExtReal v) { return v.is_finite(); });
}

bool ScalarField::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](ExtReal v) { return v.is_finite(); });
}

double ScalarField::infimum() const {
  if (!is_proper()) throw DomainError("field is improper (identically +inf)");
  return std::min_element(values_.begin(), values_.end())->raw();
}

double ScalarField::supremum_on_domain() const {
  if (!is_proper()) throw DomainError("field is improper (identically +inf)");
  double best = -std::numeric_limits<double>::infinity();
  for (ExtReal v : values_) {
    if (v.is_finite()) best = std::max(best, v.raw());
  }
  return best;
}

void require_same_space(const ScalarField& f, const ScalarField& g) {
  if (f.space_ptr() != g.space_ptr() && f.space().matrix() != g.space().matrix()) {
    throw InputError("fields live on different metric spaces");
  }
}

ScalarField scaled(const ScalarField& f, double r) {
  std::vector<ExtReal> out;
  out.reserve(f.size());
  for (ExtReal v : f.values()) out.push_back(scale(r, v));
  return ScalarField(f.space_ptr(), std::move(out));
}

ScalarField sum(const ScalarField& f, const ScalarField& g) {
  require_same_space(f, g);
  std::vector<ExtReal> out;
  out.reserve(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out.push_back(f[x] + g[x]);
  return ScalarField(f.space_ptr(), std::move(out));
}

ScalarField difference(const ScalarField& f, const ScalarField& g) {
  require_same_space(f, g);
  if (!g.is_finite()) throw DomainError("f - g requires g finite at every point");
  std::vector<ExtReal> out;
  out.reserve(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out.emplace_back(slopekit::difference(f[x], g[x]));
  return ScalarField(f.space_ptr(), std::move(out));
}

double difference_at(const ScalarField& f, const ScalarField& g, PointIndex x) {
  return slopekit::difference(f[x], g[x]);
}

}  // namespace slopekit
