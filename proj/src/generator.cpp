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

#include "slopekit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "slopekit/errors.hpp"
#include "slopekit/rng.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/tolerance.hpp"

namespace slopekit {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kMatrix:
      return "matrix";
    case MetricKind::kGraph:
      return "graph";
    case MetricKind::kGrid:
      return "grid";
  }
  return "unknown";
}

MetricKind metric_kind_from_string(const std::string& s) {
  if (s == "matrix") return MetricKind::kMatrix;
  if (s == "graph") return MetricKind::kGraph;
  if (s == "grid") return MetricKind::kGrid;
  throw ParameterError("unknown metric kind '" + s + "' (expected matrix, graph or grid)");
}

std::string to_string(DominationMode mode) {
  switch (mode) {
    case DominationMode::kTruncate:
      return "truncate";
    case DominationMode::kScale:
      return "scale";
    case DominationMode::kCompose:
      return "compose";
  }
  return "unknown";
}

DominationMode domination_mode_from_string(const std::string& s) {
  if (s == "truncate") return DominationMode::kTruncate;
  if (s == "scale") return DominationMode::kScale;
  if (s == "compose") return DominationMode::kCompose;
  throw ParameterError("unknown domination mode '" + s + "'");
}

namespace {

std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

MetricSpec random_matrix(Rng& rng, std::size_t n) {
  Matrix w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.uniform(0.1, 2.0);
  }
  return MatrixMetric{metric_closure(w)};
}

MetricSpec random_graph(Rng& rng, std::size_t n) {
  GraphMetric g;
  for (std::size_t v = 1; v < n; ++v) g.edges.push_back({rng.index(v), v, rng.uniform(0.1, 2.0)});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.bernoulli(0.25)) g.edges.push_back({u, v, rng.uniform(0.1, 2.0)});
    }
  }
  return g;
}

GridMetric random_grid(Rng& rng, std::size_t n) {
  if (n < 2) throw ParameterError("grid instances need at least two points");
  std::vector<std::size_t> shape{n};
  if (rng.bernoulli(0.5)) {
    std::vector<std::size_t> divisors;
    for (std::size_t a = 2; a * a <= n; ++a) {
      if (n % a == 0) divisors.push_back(a);
    }
    if (!divisors.empty()) {
      const std::size_t a = divisors[rng.index(divisors.size())];
      shape = {a, n / a};
    }
  }
  GridMetric g;
  for (std::size_t res : shape) g.axes.push_back({0.0, rng.uniform(1.0, 3.0), res});
  const double ps[] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  g.p = ps[rng.index(3)];
  return g;
}

double on_grid(double v, int bits) { return std::ldexp(std::floor(std::ldexp(v, bits)), -bits); }

std::vector<ExtReal> random_field(Rng& rng, std::size_t n, const FieldSpec& spec, bool& repaired) {
  std::vector<ExtReal> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = on_grid(rng.uniform(spec.lo, spec.hi), spec.grid_bits);
    values.push_back(rng.bernoulli(spec.p_inf) ? ExtReal::infinity() : ExtReal{v});
  }
  const bool improper = std::none_of(values.begin(), values.end(), [](ExtReal v) { return v.is_finite(); });
  if (improper && spec.p_inf < 1.0) {
    values[rng.index(n)] = ExtReal{on_grid(rng.uniform(spec.lo, spec.hi), spec.grid_bits)};
    repaired = true;
  }
  return values;
}

}  // namespace

Instance gen_random_instance(std::uint64_t seed, std::size_t n_points, MetricKind kind, const FieldSpec& spec) {
  if (n_points < 1) throw ParameterError("n_points must be at least 1");
  if (!(spec.p_inf >= 0.0 && spec.p_inf <= 1.0)) throw ParameterError("p_inf must lie in [0, 1]");
  if (!(spec.lo <= spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
    throw ParameterError("field value range must be finite with lo <= hi");
  }
  if (spec.grid_bits < 0 || spec.grid_bits > 52) throw ParameterError("grid_bits must lie in [0, 52]");
  Rng rng(seed);
  Instance inst;
  inst.points = point_names(n_points);
  inst.seed = seed;

  switch (kind) {
    case MetricKind::kMatrix: {
      inst.metric = random_matrix(rng, n_points);
      const auto& d = std::get<MatrixMetric>(inst.metric).dist;
      if (n_points > 1 && rng.bernoulli(0.6)) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < n_points; ++i) {
          for (std::size_t j = i + 1; j < n_points; ++j) {
            lo = std::min(lo, d[i][j]);
            hi = std::max(hi, d[i][j]);
          }
        }
        inst.neighborhoods = BallNeighborhoods{rng.uniform(lo, hi)};
      } else {
        inst.neighborhoods = AllNeighborhoods{};
      }
      break;
    }
    case MetricKind::kGraph: {
      auto g = random_graph(rng, n_points);
      ExplicitNeighborhoods adj;
      for (const auto& e : std::get<GraphMetric>(g).edges) adj.adj.emplace_back(e.u, e.v);
      inst.metric = std::move(g);
      inst.neighborhoods = std::move(adj);
      break;
    }
    case MetricKind::kGrid: {
      GridMetric g = random_grid(rng, n_points);
      const GridSpace grid = grid_space(g.axes, g.p, inst.points);
      inst.metric = std::move(g);
      inst.neighborhoods = ExplicitNeighborhoods{grid.nbhd.pairs()};
      break;
    }
  }

  bool repaired = false;
  for (const auto& name : spec.names) inst.field_values[name] = random_field(rng, n_points, spec, repaired);

  nlohmann::json prov{{"generator", "gen_random_instance"},
                      {"algorithm", Rng::kAlgorithm},
                      {"kind", to_string(kind)},
                      {"n_points", n_points},
                      {"p_inf", spec.p_inf},
                      {"range", {spec.lo, spec.hi}},
                      {"grid_bits", spec.grid_bits}};
  if (repaired) prov["repaired_improper_field"] = true;
  inst.provenance = prov.dump();
  inst.realize();
  return inst;
}

std::optional<PointIndex> find_domination_failure(const ScalarField& f, const ScalarField& g) {
  const double tol = tolerance();
  const MetricSpace& space = f.space();
  const auto rate = [&](const ScalarField& h, PointIndex x) {
    double best = 0.0;
    for (PointIndex y = 0; y < h.size(); ++y) {
      if (y == x || h[y].is_infinite()) continue;
      const double drop = h[x].raw() - h[y].raw();
      if (drop > 0.0) best = std::max(best, drop / space.distance(x, y));
    }
    return best;
  };
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f[x].is_infinite()) continue;
    if (g[x].is_infinite() || rate(g, x) > rate(f, x) + tol) return x;
  }
  return std::nullopt;
}

DominatedPair gen_dominated_pair(std::uint64_t seed, const ScalarField& f, DominationMode mode,
                                 std::optional<double> level, std::optional<double> factor) {
  if (!f.is_proper()) throw DomainError("gen_dominated_pair: base field is improper");
  Rng rng(seed);
  const double lo = f.infimum();
  const double hi = f.supremum_on_domain();
  const double lambda = level.value_or(rng.uniform(lo, hi));
  const double r = factor.value_or(rng.uniform());
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("scale factor must lie in [0, 1]");

  DominatedPair pair{f, f, mode, std::nullopt, std::nullopt};
  switch (mode) {
    case DominationMode::kTruncate:
      pair.g = truncate(f, lambda);
      pair.level = lambda;
      break;
    case DominationMode::kScale:
      pair.g = scaled(f, r);
      pair.factor = r;
      break;
    case DominationMode::kCompose:
      pair.g = scaled(truncate(f, lambda), r);
      pair.level = lambda;
      pair.factor = r;
      break;
  }
  if (const auto bad = find_domination_failure(pair.f, pair.g)) {
    throw FatalFinding("constructed pair (" + to_string(mode) + ") is not slope-dominated at '" +
                           f.space().id(*bad) + "'",
                       *bad);
  }
  return pair;
}

PLConvex gen_pl_convex(std::uint64_t seed, std::size_t max_knots, double min_gap) {
  if (max_knots < 1) throw ParameterError("max_knots must be at least 1");
  if (!(min_gap > 0.0)) throw ParameterError("min_gap must be positive");
  Rng rng(seed);
  const std::size_t k = 1 + rng.index(max_knots);
  std::vector<double> knots;
  double t = rng.uniform(-3.0, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    knots.push_back(t);
    t += min_gap + rng.uniform(0.0, 1.5);
  }
  std::vector<double> slopes;
  double s = rng.uniform(-4.0, 0.0);
  for (std::size_t i = 0; i <= k; ++i) {
    slopes.push_back(s);
    s += min_gap + rng.uniform(0.0, 2.0);
  }
  return PLConvex(std::move(knots), std::move(slopes), rng.uniform(-2.0, 2.0));
}

}  // namespace slopekit
