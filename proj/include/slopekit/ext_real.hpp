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

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "slopekit/errors.hpp"

namespace slopekit {

/// A value in R ∪ {+∞}. NaN and -∞ are rejected on construction.
class ExtReal {
 public:
  constexpr ExtReal() noexcept = default;

  ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw DomainError("extended real cannot be NaN");
    if (v == -std::numeric_limits<double>::infinity()) {
      throw DomainError("extended real cannot be -inf");
    }
  }

  static constexpr ExtReal infinity() noexcept {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }

  constexpr bool is_finite() const noexcept {
    return v_ != std::numeric_limits<double>::infinity();
  }
  constexpr bool is_infinite() const noexcept { return !is_finite(); }

  /// The underlying double; +inf for the infinite value.
  constexpr double raw() const noexcept { return v_; }

  /// The finite value. Throws DomainError on +∞.
  double value() const {
    if (!is_finite()) throw DomainError("value of +inf requested");
    return v_;
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) noexcept { return a.v_ <=> b.v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) noexcept {
    ExtReal r;
    r.v_ = a.v_ + b.v_;
    return r;
  }

 private:
  double v_ = 0.0;
};

/// a - b as an element of [-∞, +∞]. "∞ - ∞" is undefined and throws.
inline double difference(ExtReal a, ExtReal b) {
  if (a.is_infinite() && b.is_infinite()) {
    throw DomainError("inf - inf is undefined");
  }
  return a.raw() - b.raw();
}

/// r * a for r >= 0, with 0 * (+∞) := 0.
inline ExtReal scale(double r, ExtReal a) {
  if (r < 0.0 || std::isnan(r)) throw ParameterError("scale factor must be nonnegative");
  if (r == 0.0) return ExtReal{0.0};
  if (a.is_infinite()) return ExtReal::infinity();
  return ExtReal{r * a.raw()};
}

/// [t]^+ = max{0, t}; defined on [-∞, +∞].
inline double positive_part(double t) noexcept { return std::max(0.0, t); }

inline std::string to_string(ExtReal a) {
  return a.is_finite() ? std::to_string(a.raw()) : std::string("inf");
}

}  // namespace slopekit
