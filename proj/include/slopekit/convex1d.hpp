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
#include <vector>

#include "slopekit/metric_space.hpp"
#include "slopekit/scalar_field.hpp"

namespace slopekit {

/// Finite convex piecewise-linear function on the real line.
///
/// knots t_0 < ... < t_{k-1}; slopes s_0 < ... < s_k where s_0 applies on
/// (-∞, t_0), s_i on (t_{i-1}, t_i) and s_k on (t_{k-1}, ∞). The value at
/// t_0 is `anchor`.
class PLConvex {
 public:
  PLConvex(std::vector<double> knots, std::vector<double> slopes, double anchor);

  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }
  double anchor() const noexcept { return anchor_; }

  double operator()(double x) const;

  /// Drops knots whose adjacent slopes agree within tolerance.
  PLConvex normalized() const;

 private:
  PLConvex() = default;

  std::vector<double> knots_;
  std::vector<double> slopes_;
  double anchor_ = 0.0;
  /// Point at which `anchor_` is attained; t_0 unless normalisation removed it.
  double anchor_x_ = 0.0;
  std::vector<double> knot_values_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double p) const noexcept { return lo <= p && p <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// [s_{i}, s_{i+1}] at knot t_i, the singleton {s} inside a piece.
Interval subdifferential(const PLConvex& f, double x);

/// min{ |p| : p in ∂f(x) }; equals both the local and the global slope.
double slope_pl(const PLConvex& f, double x);

struct MrResult {
  /// f - g when the subdifferential maps agree.
  std::optional<double> constant;
  /// max |f - g - c| over the sampled points (0 on mismatch).
  double max_deviation = 0.0;
  std::optional<double> mismatch_at;
  Interval subdiff_f;
  Interval subdiff_g;

  bool matches() const noexcept { return constant.has_value(); }
};

/// Decides whether ∂f = ∂g after normalisation; on agreement returns
/// c = f(t_0) - g(t_0) and samples f - g - c at `samples` points. A
/// deviation beyond tolerance raises FatalFinding. On disagreement
/// reports the leftmost probe point where the subdifferentials differ.
MrResult mr_check(const PLConvex& f, const PLConvex& g, std::size_t samples = 10000);

/// Tabulates f on the nodes of a one-dimensional grid.
ScalarField sample_to_field(const PLConvex& f, const GridSpace& grid);

}  // namespace slopekit
