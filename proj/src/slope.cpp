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

#include "slopekit/slope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slopekit/errors.hpp"
#include "slopekit/tolerance.hpp"

namespace slopekit {
namespace {

void require_domain(const ScalarField& f, PointIndex x, const char* op) {
  if (x >= f.size()) throw InputError(std::string(op) + ": point index out of range");
  if (!f.in_domain(x)) {
    throw DomainError(std::string(op) + ": point '" + f.space().id(x) + "' is outside dom f");
  }
}

double decrease_rate(const ScalarField& f, PointIndex x, PointIndex y) {
  const double drop = positive_part(difference(f[x], f[y]));
  return drop == 0.0 ? 0.0 : drop / f.space().distance(x, y);
}

void require_nonnegative(double eps, const char* op) {
  if (std::isnan(eps) || eps < 0.0) throw ParameterError(std::string(op) + ": eps must be nonnegative");
}

}  // namespace

double local_slope(const ScalarField& f, const NeighborhoodSystem& nbhd, PointIndex x) {
  require_domain(f, x, "local_slope");
  if (nbhd.size() != f.size()) throw ShapeError("neighbourhood system does not match the field's space");
  double best = 0.0;
  for (PointIndex y : nbhd.neighbors(x)) best = std::max(best, decrease_rate(f, x, y));
  return best;
}

double global_slope(const ScalarField& f, PointIndex x) {
  require_domain(f, x, "global_slope");
  double best = 0.0;
  for (PointIndex y = 0; y < f.size(); ++y) {
    if (y != x) best = std::max(best, decrease_rate(f, x, y));
  }
  return best;
}

std::vector<std::optional<double>> global_slopes(const ScalarField& f) {
  std::vector<std::optional<double>> out(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x)) out[x] = global_slope(f, x);
  }
  return out;
}

std::vector<std::optional<double>> local_slopes(const ScalarField& f, const NeighborhoodSystem& nbhd) {
  std::vector<std::optional<double>> out(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x)) out[x] = local_slope(f, nbhd, x);
  }
  return out;
}

SlopeProfile slope_profile(const ScalarField& f, const NeighborhoodSystem& nbhd) {
  return SlopeProfile{local_slopes(f, nbhd), global_slopes(f)};
}

PointSet eps_argmin(const ScalarField& f, double eps) {
  require_nonnegative(eps, "eps_argmin");
  if (!f.is_proper()) throw DomainError("eps_argmin: field is improper");
  const double level = f.infimum() + eps + tolerance();
  PointSet out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x) && f[x].raw() <= level) out.push_back(x);
  }
  return out;
}

PointSet eps_crit(const ScalarField& f, const NeighborhoodSystem& nbhd, double eps) {
  require_nonnegative(eps, "eps_crit");
  PointSet out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x) && local_slope(f, nbhd, x) <= eps + tolerance()) out.push_back(x);
  }
  return out;
}

PointSet eps_Crit(const ScalarField& f, double eps) {
  require_nonnegative(eps, "eps_Crit");
  const double tol = tolerance();
  PointSet out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x) && global_slope(f, x) <= eps + tol) out.push_back(x);
  }
  for (PointIndex x : out) {
    for (PointIndex y = 0; y < f.size(); ++y) {
      if (!f.in_domain(y) || y == x) continue;
      const double bound = f[x].raw() - (eps + tol) * f.space().distance(x, y) - tol;
      if (f[y].raw() < bound) {
        throw FatalFinding("eps_Crit member '" + f.space().id(x) + "' violates f(y) >= f(x) - eps d(y,x) at '" +
                               f.space().id(y) + "'",
                           x);
      }
    }
  }
  return out;
}

ScalarField pasch_hausdorff(const ScalarField& f, double eps) {
  if (!(eps > 0.0)) throw ParameterError("pasch_hausdorff: eps must be positive");
  if (!f.is_proper()) throw DomainError("pasch_hausdorff: field is improper");
  const PointSet dom = f.domain();
  std::vector<ExtReal> out;
  out.reserve(f.size());
  for (PointIndex x = 0; x < f.size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (PointIndex y : dom) best = std::min(best, f[y].raw() + eps * f.space().distance(y, x));
    out.emplace_back(best);
  }
  return ScalarField(f.space_ptr(), std::move(out));
}

PointSet coincidence_set(const ScalarField& f, double eps) {
  const ScalarField reg = pasch_hausdorff(f, eps);
  PointSet out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x) && f[x].raw() - reg[x].raw() <= tolerance()) out.push_back(x);
  }
  return out;
}

ScalarField truncate(const ScalarField& g, double lambda) {
  if (!std::isfinite(lambda)) throw ParameterError("truncate: level must be finite");
  std::vector<ExtReal> out;
  out.reserve(g.size());
  for (ExtReal v : g.values()) out.push_back(std::min(v, ExtReal{lambda}));
  return ScalarField(g.space_ptr(), std::move(out));
}

ScalarField log_distance_field(const SpacePtr& space, PointIndex center) {
  if (space->size() < 2) throw InputError("log_distance_field needs at least two points");
  if (center >= space->size()) throw InputError("log_distance_field: center out of range");
  std::vector<ExtReal> out;
  out.reserve(space->size());
  for (PointIndex x = 0; x < space->size(); ++x) {
    out.push_back(x == center ? ExtReal::infinity() : ExtReal{-std::log(space->distance(x, center))});
  }
  return ScalarField(space, std::move(out));
}

PointSet sublevel_diff(const ScalarField& f, const ScalarField& g, double lambda) {
  require_same_space(f, g);
  if (!f.is_proper()) throw DomainError("sublevel_diff: f is improper");
  if (!std::isfinite(lambda)) throw ParameterError("sublevel_diff: level must be finite");
  PointSet out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.in_domain(x) && difference(f[x], g[x]) <= lambda + tolerance()) out.push_back(x);
  }
  return out;
}

std::optional<PointIndex> Subspace::local_index(PointIndex parent_index) const {
  const auto it = std::lower_bound(parent.begin(), parent.end(), parent_index);
  if (it == parent.end() || *it != parent_index) return std::nullopt;
  return static_cast<PointIndex>(it - parent.begin());
}

ScalarField Subspace::restrict(const ScalarField& f) const {
  std::vector<ExtReal> values;
  values.reserve(parent.size());
  for (PointIndex p : parent) values.push_back(f[p]);
  return ScalarField(space, std::move(values));
}

NeighborhoodSystem Subspace::restrict(const NeighborhoodSystem& nbhd) const { return nbhd.induced(parent); }

Subspace induced_subspace(const MetricSpace& space, std::span<const PointIndex> subset) {
  if (subset.empty()) throw InputError("cannot restrict to an empty subset");
  std::vector<PointIndex> parent(subset.begin(), subset.end());
  std::sort(parent.begin(), parent.end());
  parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
  if (parent.back() >= space.size()) throw InputError("subset index out of range");
  std::vector<std::string> ids;
  Matrix d(parent.size(), std::vector<double>(parent.size()));
  for (std::size_t i = 0; i < parent.size(); ++i) {
    ids.push_back(space.id(parent[i]));
    for (std::size_t j = 0; j < parent.size(); ++j) d[i][j] = space.distance(parent[i], parent[j]);
  }
  return Subspace{make_space(std::move(ids), d), std::move(parent)};
}

Restriction restrict(const ScalarField& f, std::span<const PointIndex> subset) {
  Subspace sub = induced_subspace(f.space(), subset);
  ScalarField field = sub.restrict(f);
  return Restriction{std::move(sub), std::move(field)};
}

PointSet set_intersection(std::span<const PointIndex> a, std::span<const PointIndex> b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace slopekit
