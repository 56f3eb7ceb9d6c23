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

#include <span>
#include <vector>

#include "slopekit/ext_real.hpp"
#include "slopekit/metric_space.hpp"

namespace slopekit {

/// One extended-real value per point of a metric space.
class ScalarField {
 public:
  ScalarField(SpacePtr space, std::vector<ExtReal> values);
  ScalarField(SpacePtr space, std::span<const double> values);

  static ScalarField constant(SpacePtr space, ExtReal value);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const MetricSpace& space() const noexcept { return *space_; }
  std::size_t size() const noexcept { return values_.size(); }

  ExtReal operator[](PointIndex x) const { return values_.at(x); }
  const std::vector<ExtReal>& values() const noexcept { return values_; }
  std::vector<double> raw() const;

  bool in_domain(PointIndex x) const { return values_.at(x).is_finite(); }
  PointSet domain() const;
  bool is_proper() const noexcept;
  bool is_finite() const noexcept;

  /// min over dom f; throws DomainError if the field is improper.
  double infimum() const;
  double supremum_on_domain() const;

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  std::vector<ExtReal> values_;
};

/// r * f for r >= 0 (0 * ∞ := 0).
ScalarField scaled(const ScalarField& f, double r);

/// f + g pointwise; both fields must live on the same space.
ScalarField sum(const ScalarField& f, const ScalarField& g);

/// f - g pointwise for g finite everywhere (f may be +∞).
ScalarField difference(const ScalarField& f, const ScalarField& g);

/// (f - g)(x) under the "∞ - ∞ is undefined" convention; throws where
/// both values are +∞ and may return -∞ where only g is infinite.
double difference_at(const ScalarField& f, const ScalarField& g, PointIndex x);

void require_same_space(const ScalarField& f, const ScalarField& g);

}  // namespace slopekit
