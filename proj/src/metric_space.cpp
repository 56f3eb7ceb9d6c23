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

#include "slopekit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "slopekit/errors.hpp"
#include "slopekit/tolerance.hpp"

namespace slopekit {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kAsymmetry:
      return "asymmetry";
    case ViolationKind::kNegativeEntry:
      return "negative_entry";
    case ViolationKind::kNonzeroDiagonal:
      return "nonzero_diagonal";
    case ViolationKind::kZeroOffDiagonal:
      return "zero_off_diagonal";
    case ViolationKind::kTriangle:
      return "triangle";
  }
  return "unknown";
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " at (" << i << "," << j << ")";
  if (via) os << " via " << *via;
  os << ": " << lhs;
  if (kind == ViolationKind::kTriangle) os << " > " << rhs;
  if (kind == ViolationKind::kAsymmetry) os << " != " << rhs;
  return os.str();
}

MetricReport validate_metric(const Matrix& dist) {
  const std::size_t n = dist.size();
  for (const auto& row : dist) {
    if (row.size() != n) {
      throw ShapeError("distance matrix must be square: " + std::to_string(n) + " rows but a row of length " +
                       std::to_string(row.size()));
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw ParameterError("distance matrix entries must be finite");
    }
  }

  const double tol = tolerance();
  MetricReport report;
  auto add = [&report](ViolationKind kind, std::size_t i, std::size_t j, std::optional<std::size_t> via,
                       double lhs, double rhs) { report.violations.push_back({kind, i, j, via, lhs, rhs}); };

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > tol) add(ViolationKind::kNonzeroDiagonal, i, i, std::nullopt, dist[i][i], 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dist[i][j] < 0.0) {
        add(ViolationKind::kNegativeEntry, i, j, std::nullopt, dist[i][j], 0.0);
      } else if (dist[i][j] <= tol) {
        add(ViolationKind::kZeroOffDiagonal, i, j, std::nullopt, dist[i][j], 0.0);
      }
      if (i < j && std::abs(dist[i][j] - dist[j][i]) > tol) {
        add(ViolationKind::kAsymmetry, i, j, std::nullopt, dist[i][j], dist[j][i]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double detour = dist[i][j] + dist[j][k];
        if (dist[i][k] > detour + tol) add(ViolationKind::kTriangle, i, k, j, dist[i][k], detour);
      }
    }
  }
  return report;
}

MetricSpace::MetricSpace(std::vector<std::string> points, const Matrix& dist) : points_(std::move(points)) {
  if (points_.empty()) throw InputError("metric space needs at least one point");
  if (dist.size() != points_.size()) {
    throw ShapeError("distance matrix has " + std::to_string(dist.size()) + " rows for " +
                     std::to_string(points_.size()) + " points");
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) throw InputError("duplicate point identifier '" + p + "'");
  }
  const MetricReport report = validate_metric(dist);
  if (!report.ok()) {
    std::string msg = "distance matrix violates the metric axioms: " + report.violations.front().describe();
    if (report.violations.size() > 1) {
      msg += " (and " + std::to_string(report.violations.size() - 1) + " more)";
    }
    throw InputError(msg);
  }
  const std::size_t n = points_.size();
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist_[i * n + j] = i == j ? 0.0 : dist[i][j];
  }
}

std::optional<PointIndex> MetricSpace::index_of(const std::string& id) const {
  const auto it = std::find(points_.begin(), points_.end(), id);
  if (it == points_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - points_.begin());
}

Matrix MetricSpace::matrix() const {
  const std::size_t n = size();
  Matrix m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = dist_[i * n + j];
  }
  return m;
}

double MetricSpace::diameter() const noexcept {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

SpacePtr make_space(std::vector<std::string> points, const Matrix& dist) {
  return std::make_shared<const MetricSpace>(std::move(points), dist);
}

// --- neighbourhoods ---------------------------------------------------------

NeighborhoodSystem::NeighborhoodSystem(std::vector<std::vector<PointIndex>> lists, Unchecked)
    : lists_(std::move(lists)) {
  const std::size_t n = lists_.size();
  for (std::size_t x = 0; x < n; ++x) {
    auto& l = lists_[x];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    for (PointIndex y : l) {
      if (y >= n) throw InputError("neighbour index " + std::to_string(y) + " out of range");
      if (y == x) throw InputError("point " + std::to_string(x) + " listed as its own neighbour");
    }
  }
}

NeighborhoodSystem::NeighborhoodSystem(std::vector<std::vector<PointIndex>> lists)
    : NeighborhoodSystem(std::move(lists), Unchecked{}) {
  for (std::size_t x = 0; x < lists_.size(); ++x) {
    for (PointIndex y : lists_[x]) {
      if (!contains(y, x)) {
        throw InputError("neighbourhood system is not symmetric: " + std::to_string(y) + " is a neighbour of " +
                         std::to_string(x) + " but not conversely");
      }
    }
  }
}

NeighborhoodSystem NeighborhoodSystem::from_lists_unchecked(std::vector<std::vector<PointIndex>> lists) {
  return NeighborhoodSystem(std::move(lists), Unchecked{});
}

NeighborhoodSystem NeighborhoodSystem::from_pairs(std::size_t n,
                                                  std::span<const std::pair<PointIndex, PointIndex>> pairs) {
  std::vector<std::vector<PointIndex>> lists(n);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw InputError("adjacency pair index out of range");
    if (a == b) throw InputError("adjacency pair joins a point to itself");
    lists[a].push_back(b);
    lists[b].push_back(a);
  }
  return NeighborhoodSystem(std::move(lists));
}

bool NeighborhoodSystem::contains(PointIndex x, PointIndex y) const {
  const auto& l = lists_.at(x);
  return std::binary_search(l.begin(), l.end(), y);
}

bool NeighborhoodSystem::is_symmetric() const {
  for (std::size_t x = 0; x < lists_.size(); ++x) {
    for (PointIndex y : lists_[x]) {
      if (y >= lists_.size() || !contains(y, x)) return false;
    }
  }
  return true;
}

std::vector<std::pair<PointIndex, PointIndex>> NeighborhoodSystem::pairs() const {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  for (std::size_t x = 0; x < lists_.size(); ++x) {
    for (PointIndex y : lists_[x]) {
      if (x < y) out.emplace_back(x, y);
    }
  }
  return out;
}

NeighborhoodSystem NeighborhoodSystem::induced(std::span<const PointIndex> subset) const {
  std::vector<std::optional<PointIndex>> position(lists_.size());
  for (std::size_t k = 0; k < subset.size(); ++k) position.at(subset[k]) = k;
  std::vector<std::vector<PointIndex>> lists(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    for (PointIndex y : lists_[subset[k]]) {
      if (position[y]) lists[k].push_back(*position[y]);
    }
  }
  return NeighborhoodSystem(std::move(lists), Unchecked{});
}

// --- constructions ----------------------------------------------------------

Matrix metric_closure(const Matrix& weights) {
  const std::size_t n = weights.size();
  Matrix d = weights;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw ShapeError("weight matrix must be square");
    d[i][i] = 0.0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

SpacePtr shortest_path_space(std::vector<std::string> vertices, std::span<const WeightedEdge> edges) {
  const std::size_t n = vertices.size();
  if (n == 0) throw InputError("graph has no vertices");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Matrix w(n, std::vector<double>(n, kInf));
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ParameterError("edge weights must be positive and finite, got " + std::to_string(e.weight) +
                           " on (" + vertices[e.u] + "," + vertices[e.v] + ")");
    }
    if (e.u == e.v) continue;
    w[e.u][e.v] = std::min(w[e.u][e.v], e.weight);
    w[e.v][e.u] = w[e.u][e.v];
  }
  Matrix d = metric_closure(w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i][j] == kInf) {
        throw InputError("graph is disconnected: no path between '" + vertices[i] + "' and '" + vertices[j] + "'");
      }
    }
  }
  return make_space(std::move(vertices), d);
}

NeighborhoodSystem ball_neighborhoods(const MetricSpace& space, double r) {
  if (!(r > 0.0)) throw ParameterError("ball radius must be positive");
  const std::size_t n = space.size();
  std::vector<std::vector<PointIndex>> lists(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && space.distance(x, y) <= r) lists[x].push_back(y);
    }
  }
  return NeighborhoodSystem(std::move(lists));
}

NeighborhoodSystem all_neighborhoods(std::size_t n) {
  std::vector<std::vector<PointIndex>> lists(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) lists[x].push_back(y);
    }
  }
  return NeighborhoodSystem(std::move(lists));
}

namespace {

double p_distance(std::span<const double> a, std::span<const double> b, double p) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
    return acc;
  }
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::pow(std::abs(a[k] - b[k]), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

GridSpace grid_space(std::span<const GridAxis> axes, double p, std::vector<std::string> ids) {
  if (axes.empty()) throw ParameterError("grid needs at least one axis");
  if (std::isnan(p) || p < 1.0) throw ParameterError("grid exponent p must lie in [1, inf]");
  std::size_t count = 1;
  for (const auto& ax : axes) {
    if (ax.resolution < 2) throw ParameterError("grid resolution must be at least 2 per axis");
    if (!(ax.lower < ax.upper) || !std::isfinite(ax.lower) || !std::isfinite(ax.upper)) {
      throw ParameterError("grid bounds must be finite with lower < upper");
    }
    count *= ax.resolution;
  }
  if (!ids.empty() && ids.size() != count) {
    throw InputError("grid has " + std::to_string(count) + " nodes but " + std::to_string(ids.size()) +
                     " point identifiers were given");
  }

  const std::size_t dim = axes.size();
  std::vector<std::vector<std::size_t>> multi(count, std::vector<std::size_t>(dim));
  std::vector<std::vector<double>> coords(count, std::vector<double>(dim));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t a = dim; a-- > 0;) {
      const auto& ax = axes[a];
      const std::size_t k = rest % ax.resolution;
      rest /= ax.resolution;
      multi[idx][a] = k;
      const double t = static_cast<double>(k) / static_cast<double>(ax.resolution - 1);
      coords[idx][a] = k + 1 == ax.resolution ? ax.upper : ax.lower + t * (ax.upper - ax.lower);
    }
  }
  if (ids.empty()) {
    ids.reserve(count);
    for (const auto& m : multi) {
      std::string s = "(";
      for (std::size_t a = 0; a < dim; ++a) s += (a ? "," : "") + std::to_string(m[a]);
      ids.push_back(s + ")");
    }
  }

  Matrix d(count, std::vector<double>(count, 0.0));
  std::vector<std::vector<PointIndex>> lists(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      d[i][j] = p_distance(coords[i], coords[j], p);
      std::size_t differing = 0;
      std::size_t step = 0;
      for (std::size_t a = 0; a < dim; ++a) {
        if (multi[i][a] != multi[j][a]) {
          ++differing;
          step = multi[i][a] > multi[j][a] ? multi[i][a] - multi[j][a] : multi[j][a] - multi[i][a];
        }
      }
      if (differing == 1 && step == 1) lists[i].push_back(j);
    }
  }
  return GridSpace{make_space(std::move(ids), d), NeighborhoodSystem(std::move(lists)), std::move(coords)};
}

}  // namespace slopekit
