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

#include "slopekit/convex1d.hpp"

#include <algorithm>
#include <cmath>

#include "slopekit/errors.hpp"
#include "slopekit/tolerance.hpp"

namespace slopekit {

PLConvex::PLConvex(std::vector<double> knots, std::vector<double> slopes, double anchor)
    : knots_(std::move(knots)), slopes_(std::move(slopes)), anchor_(anchor) {
  if (knots_.empty()) throw ShapeError("piecewise-linear function needs at least one knot");
  if (slopes_.size() != knots_.size() + 1) {
    throw ShapeError("expected " + std::to_string(knots_.size() + 1) + " slopes for " +
                     std::to_string(knots_.size()) + " knots, got " + std::to_string(slopes_.size()));
  }
  if (!std::isfinite(anchor_)) throw ParameterError("anchor value must be finite");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i])) throw ParameterError("knots must be finite");
    if (i > 0 && !(knots_[i] > knots_[i - 1])) throw ParameterError("knots must be strictly increasing");
  }
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (!std::isfinite(slopes_[i])) throw ParameterError("slopes must be finite");
    if (i > 0 && !(slopes_[i] > slopes_[i - 1])) {
      throw ParameterError("slopes must be strictly increasing (convexity)");
    }
  }
  anchor_x_ = knots_.front();
  knot_values_.resize(knots_.size());
  knot_values_[0] = anchor_;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    knot_values_[i] = knot_values_[i - 1] + slopes_[i] * (knots_[i] - knots_[i - 1]);
  }
}

double PLConvex::operator()(double x) const {
  if (knots_.empty()) return anchor_ + slopes_.front() * (x - anchor_x_);
  const auto i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
  if (i == 0) return knot_values_[0] + slopes_[0] * (x - knots_[0]);
  return knot_values_[i - 1] + slopes_[i] * (x - knots_[i - 1]);
}

PLConvex PLConvex::normalized() const {
  const double tol = tolerance();
  PLConvex out;
  out.slopes_.push_back(slopes_.front());
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (slopes_[i + 1] - out.slopes_.back() > tol) {
      out.knots_.push_back(knots_[i]);
      out.slopes_.push_back(slopes_[i + 1]);
    }
  }
  if (out.knots_.empty()) {
    out.anchor_x_ = anchor_x_;
    out.anchor_ = anchor_;
    return out;
  }
  out.anchor_x_ = out.knots_.front();
  out.anchor_ = (*this)(out.anchor_x_);
  out.knot_values_.resize(out.knots_.size());
  out.knot_values_[0] = out.anchor_;
  for (std::size_t i = 1; i < out.knots_.size(); ++i) {
    out.knot_values_[i] = out.knot_values_[i - 1] + out.slopes_[i] * (out.knots_[i] - out.knots_[i - 1]);
  }
  return out;
}

Interval subdifferential(const PLConvex& f, double x) {
  const auto& t = f.knots();
  const auto& s = f.slopes();
  const auto it = std::lower_bound(t.begin(), t.end(), x);
  const auto i = static_cast<std::size_t>(it - t.begin());
  if (it != t.end() && *it == x) return Interval{s[i], s[i + 1]};
  return Interval{s[i], s[i]};
}

double slope_pl(const PLConvex& f, double x) {
  const Interval d = subdifferential(f, x);
  if (d.contains(0.0)) return 0.0;
  return std::min(std::abs(d.lo), std::abs(d.hi));
}

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool same_structure(const PLConvex& f, const PLConvex& g, double tol) {
  if (f.knots().size() != g.knots().size()) return false;
  for (std::size_t i = 0; i < f.knots().size(); ++i) {
    if (!close(f.knots()[i], g.knots()[i], tol)) return false;
  }
  for (std::size_t i = 0; i < f.slopes().size(); ++i) {
    if (!close(f.slopes()[i], g.slopes()[i], tol)) return false;
  }
  return true;
}

std::vector<double> probe_points(const PLConvex& f, const PLConvex& g) {
  std::vector<double> u = f.knots();
  u.insert(u.end(), g.knots().begin(), g.knots().end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (u.empty()) return {0.0};
  std::vector<double> probes{u.front() - 1.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    probes.push_back(u[i]);
    probes.push_back(i + 1 < u.size() ? 0.5 * (u[i] + u[i + 1]) : u[i] + 1.0);
  }
  return probes;
}

}  // namespace

MrResult mr_check(const PLConvex& f, const PLConvex& g, std::size_t samples) {
  const double tol = tolerance();
  const PLConvex fn = f.normalized();
  const PLConvex gn = g.normalized();
  MrResult result;

  if (!same_structure(fn, gn, tol)) {
    for (double x : probe_points(fn, gn)) {
      const Interval df = subdifferential(fn, x);
      const Interval dg = subdifferential(gn, x);
      if (!close(df.lo, dg.lo, tol) || !close(df.hi, dg.hi, tol)) {
        result.mismatch_at = x;
        result.subdiff_f = df;
        result.subdiff_g = dg;
        return result;
      }
    }
  }

  const double t0 = f.knots().front();
  const double c = f(t0) - g(t0);
  result.constant = c;
  double lo = std::min(f.knots().front(), g.knots().front());
  double hi = std::max(f.knots().back(), g.knots().back());
  const double pad = (hi - lo) + 1.0;
  lo -= pad;
  hi += pad;
  const std::size_t count = std::max<std::size_t>(samples, 2);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    result.max_deviation = std::max(result.max_deviation, std::abs(f(x) - g(x) - c));
  }
  // Slopes may differ by up to tol, which integrates over the window.
  const double allowed = tol * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  if (result.max_deviation > allowed) {
    throw FatalFinding("subdifferentials agree but f - g is not constant (deviation " +
                           std::to_string(result.max_deviation) + ")",
                       std::nullopt);
  }
  result.subdiff_f = subdifferential(fn, t0);
  result.subdiff_g = subdifferential(gn, t0);
  return result;
}

ScalarField sample_to_field(const PLConvex& f, const GridSpace& grid) {
  if (grid.dimension() != 1) throw ParameterError("sample_to_field needs a one-dimensional grid");
  std::vector<ExtReal> values;
  values.reserve(grid.coords.size());
  for (const auto& c : grid.coords) values.emplace_back(f(c[0]));
  return ScalarField(grid.space, std::move(values));
}

}  // namespace slopekit
