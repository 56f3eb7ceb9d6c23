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

#include "slopekit/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slopekit/errors.hpp"
#include "slopekit/tolerance.hpp"

namespace slopekit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_point(const ScalarField& f, PointIndex x, const char* op) {
  if (x >= f.size()) throw InputError(std::string(op) + ": point index out of range");
  if (!f.in_domain(x)) {
    throw DomainError(std::string(op) + ": start point '" + f.space().id(x) + "' is outside dom f");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

double slope_of(const ScalarField& f, const NeighborhoodSystem& nbhd, PointIndex x, SlopeKind mode) {
  return mode == SlopeKind::kLocal ? local_slope(f, nbhd, x) : global_slope(f, x);
}

void require_g_finite_on_domain(const ScalarField& f, const ScalarField& g) {
  for (PointIndex x : f.domain()) {
    if (!g.in_domain(x)) throw PreconditionError("g must be finite on dom f; fails at '" + f.space().id(x) + "'", x);
  }
}

/// Strict domination |∇f| > |∇g| at every x in dom f with |∇f|(x) > tol.
void require_strict_domination(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                               SlopeKind mode) {
  const double tol = tolerance();
  for (PointIndex x : f.domain()) {
    const double sf = slope_of(f, nbhd, x, mode);
    if (sf <= tol) continue;
    const double sg = slope_of(g, nbhd, x, mode);
    if (!(sf > sg)) {
      throw PreconditionError("strict slope domination fails at '" + f.space().id(x) + "': |slope f| = " +
                                  std::to_string(sf) + " <= |slope g| = " + std::to_string(sg),
                              x);
    }
  }
}

PointIndex constrained_step(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                            PointIndex x0, double eps, SlopeKind mode) {
  const double tol = tolerance();
  const double level = difference(f[x0], g[x0]);
  const PointSet feasible = sublevel_diff(f, g, level);
  const Restriction sub = restrict(f, feasible);
  const PointIndex start = *sub.subspace.local_index(x0);
  const PointIndex x = sub.subspace.parent[ekeland_point(sub.field, start, eps)];

  const double s = slope_of(f, nbhd, x, mode);
  if (s > eps + tol) {
    throw FatalFinding("descent step returned '" + f.space().id(x) + "' with slope " + std::to_string(s) +
                           " > eps = " + std::to_string(eps),
                       x);
  }
  if (f[x].raw() > f[x0].raw() - eps * f.space().distance(x, x0) + tol) {
    throw FatalFinding("descent step returned '" + f.space().id(x) + "' without sufficient decrease", x);
  }
  if (difference(f[x], g[x]) > level + tol) {
    throw FatalFinding("descent step returned '" + f.space().id(x) + "' outside the sublevel set of f - g", x);
  }
  return x;
}

}  // namespace

PointIndex ekeland_point(const ScalarField& f, PointIndex x0, double lambda) {
  require_point(f, x0, "ekeland_point");
  require_positive(lambda, "ekeland_point: lambda");
  const PointSet dom = f.domain();
  PointIndex x = x0;
  for (;;) {
    PointIndex best = x;
    for (PointIndex y : dom) {
      if (y == x) continue;
      const double fy = f[y].raw();
      if (fy < f[x].raw() && fy + lambda * f.space().distance(y, x) <= f[x].raw() && fy < f[best].raw()) {
        best = y;
      }
    }
    if (best == x) return x;
    x = best;
  }
}

PointIndex descent_step(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                        PointIndex x0, double eps, SlopeKind mode) {
  require_same_space(f, g);
  require_point(f, x0, "descent_step");
  require_positive(eps, "descent_step: eps");
  require_g_finite_on_domain(f, g);
  require_strict_domination(f, g, nbhd, mode);
  return constrained_step(f, g, nbhd, x0, eps, mode);
}

PointIndex scaled_descent_step(const ScalarField& f, const ScalarField& g, PointIndex x0, double eps, double r) {
  require_same_space(f, g);
  require_point(f, x0, "scaled_descent_step");
  require_positive(eps, "scaled_descent_step: eps");
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("scaled_descent_step: r must lie in (0,1)");
  require_g_finite_on_domain(f, g);
  const double tol = tolerance();
  for (PointIndex x : f.domain()) {
    const double sf = global_slope(f, x);
    const double sg = global_slope(g, x);
    if (sg > sf + tol) {
      throw PreconditionError("slope domination |slope g| <= |slope f| fails at '" + f.space().id(x) + "'", x);
    }
  }
  const ScalarField rg = scaled(g, r);
  return constrained_step(f, rg, NeighborhoodSystem{}, x0, eps, SlopeKind::kGlobal);
}

EpsSchedule::EpsSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ParameterError("eps schedule is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw ParameterError("eps schedule entries must be positive and finite");
    }
    if (i > 0 && !(values_[i] < values_[i - 1])) {
      throw ParameterError("eps schedule must be strictly decreasing (entry " + std::to_string(i) + ")");
    }
  }
}

EpsSchedule EpsSchedule::geometric(double eps0, std::size_t count) {
  require_positive(eps0, "eps0");
  std::vector<double> v;
  v.reserve(count);
  double e = eps0;
  for (std::size_t n = 0; n < count; ++n) {
    e /= 2.0;
    if (!(e > 0.0)) break;
    v.push_back(e);
  }
  return EpsSchedule(std::move(v));
}

std::string to_string(TraceTerminal t) {
  return t == TraceTerminal::kReachedCritical ? "reached_0crit" : "budget_exhausted";
}

DescentTrace descent_to_critical(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                                 PointIndex x0, const EpsSchedule& schedule, SlopeKind mode) {
  require_same_space(f, g);
  require_point(f, x0, "descent_to_critical");
  require_g_finite_on_domain(f, g);
  require_strict_domination(f, g, nbhd, mode);
  const double tol = tolerance();

  DescentTrace trace;
  auto record_point = [&](PointIndex x) {
    trace.points.push_back(x);
    trace.f_values.push_back(f[x].raw());
    trace.diff_values.push_back(difference(f[x], g[x]));
  };
  auto critical = [&](PointIndex x) { return slope_of(f, nbhd, x, mode) <= tol; };

  PointIndex x = x0;
  record_point(x);
  if (critical(x)) {
    trace.terminal = TraceTerminal::kReachedCritical;
    return trace;
  }
  for (double eps : schedule.values()) {
    ++trace.schedule_used;
    const double level = difference(f[x], g[x]);
    const PointIndex next = constrained_step(f, g, nbhd, x, eps, mode);
    if (next != x) {
      trace.eps.push_back(eps);
      trace.step_distances.push_back(f.space().distance(next, x));
      trace.levels.push_back(level);
      record_point(next);
      x = next;
    }
    if (critical(x)) {
      trace.terminal = TraceTerminal::kReachedCritical;
      return trace;
    }
  }
  trace.terminal = TraceTerminal::kBudgetExhausted;
  if (schedule.values().back() <= 0.5 * tol) {
    throw FatalFinding("descent did not reach a critical point although the schedule fell below tolerance "
                       "(an escaping sequence is impossible on a finite space)",
                       x);
  }
  return trace;
}

// --- determination checks ---------------------------------------------------

std::string to_string(HypothesisStatus s) { return s == HypothesisStatus::kSatisfied ? "satisfied" : "violated"; }

std::string to_string(ConclusionStatus s) {
  switch (s) {
    case ConclusionStatus::kVerified:
      return "verified";
    case ConclusionStatus::kFalsified:
      return "falsified";
    case ConclusionStatus::kNotEvaluated:
      return "not_evaluated";
  }
  return "unknown";
}

int CheckReport::exit_code() const noexcept {
  if (hypothesis == HypothesisStatus::kViolated) return 1;
  return conclusion == ConclusionStatus::kFalsified ? 2 : 0;
}

namespace {

struct Minimum {
  double value = kInf;
  std::optional<PointIndex> at;
};

template <typename Fn>
Minimum minimum_over(std::span<const PointIndex> points, Fn&& value) {
  Minimum m;
  for (PointIndex x : points) {
    const double v = value(x);
    if (!m.at || v < m.value) {
      m.value = v;
      m.at = x;
    }
  }
  return m;
}

PointSet all_points(std::size_t n) {
  PointSet p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

/// Records points where f or g is +∞; returns false if any.
bool require_finite_pair(const ScalarField& f, const ScalarField& g, CheckReport& report) {
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (!f.in_domain(x) || !g.in_domain(x)) report.violating_points.push_back(x);
  }
  if (report.violating_points.empty()) return true;
  report.hypothesis = HypothesisStatus::kViolated;
  report.detail = "f and g must be finite at every point";
  return false;
}

/// |∇̃g| <= |∇̃f| + tol at every x in `points`; g(x) = +∞ counts as a failure.
bool require_global_domination(const ScalarField& f, const ScalarField& g, std::span<const PointIndex> points,
                               CheckReport& report) {
  const double tol = tolerance();
  for (PointIndex x : points) {
    if (!g.in_domain(x) || global_slope(g, x) > global_slope(f, x) + tol) report.violating_points.push_back(x);
  }
  if (report.violating_points.empty()) return true;
  report.hypothesis = HypothesisStatus::kViolated;
  report.detail = "global slope of g exceeds global slope of f";
  return false;
}

void conclude(CheckReport& report, double slack, std::optional<PointIndex> witness) {
  report.slack = slack;
  report.witness = witness;
  report.conclusion = slack >= -tolerance() ? ConclusionStatus::kVerified : ConclusionStatus::kFalsified;
}

}  // namespace

CheckReport check_compact(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd) {
  require_same_space(f, g);
  CheckReport report{.check = "compact"};
  if (!require_finite_pair(f, g, report)) return report;
  const double tol = tolerance();
  for (PointIndex x = 0; x < f.size(); ++x) {
    const double sf = local_slope(f, nbhd, x);
    if (sf > tol && !(sf > local_slope(g, nbhd, x))) report.violating_points.push_back(x);
  }
  if (!report.violating_points.empty()) {
    report.hypothesis = HypothesisStatus::kViolated;
    report.detail = "strict local slope domination fails outside 0-crit f";
    return report;
  }
  const auto diff = [&](PointIndex x) { return difference(f[x], g[x]); };
  const Minimum everywhere = minimum_over(all_points(f.size()), diff);
  const Minimum critical = minimum_over(eps_crit(f, nbhd, 0.0), diff);
  conclude(report, everywhere.value - critical.value, critical.at);
  report.detail = "inf(f-g) = " + std::to_string(everywhere.value) +
                  ", inf over 0-crit f = " + std::to_string(critical.value);
  return report;
}

CheckReport check_tz(const ScalarField& f, const ScalarField& g) {
  require_same_space(f, g);
  if (!f.is_proper()) throw DomainError("check_tz: f is improper");
  CheckReport report{.check = "tz"};
  const PointSet dom = f.domain();
  if (!require_global_domination(f, g, dom, report)) return report;
  const double inf_f = f.infimum();
  const double inf_g = g.infimum();
  const Minimum m = minimum_over(dom, [&](PointIndex x) { return (f[x].raw() - inf_f) - (g[x].raw() - inf_g); });
  conclude(report, m.value, m.at);
  report.detail = "min over dom f of (f - inf f) - (g - inf g) = " + std::to_string(m.value);
  return report;
}

CheckReport check_lips(const ScalarField& f, const ScalarField& g, double eps) {
  require_same_space(f, g);
  require_positive(eps, "check_lips: eps");
  CheckReport report{.check = "lips"};
  if (!require_finite_pair(f, g, report)) return report;
  if (!require_global_domination(f, g, all_points(f.size()), report)) return report;
  const auto diff = [&](PointIndex x) { return difference(f[x], g[x]); };
  const Minimum everywhere = minimum_over(all_points(f.size()), diff);
  const Minimum critical = minimum_over(eps_Crit(f, eps), diff);
  conclude(report, everywhere.value - critical.value, critical.at);
  report.detail = "inf(f-g) = " + std::to_string(everywhere.value) +
                  ", inf over eps-Crit f = " + std::to_string(critical.value);
  return report;
}

CheckReport check_lsc(const ScalarField& f, const ScalarField& g, double r, double eps) {
  require_same_space(f, g);
  require_positive(eps, "check_lsc: eps");
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("check_lsc: r must lie in (0,1)");
  if (!f.is_proper()) throw DomainError("check_lsc: f is improper");
  CheckReport report{.check = "lsc"};
  const PointSet dom = f.domain();
  if (!require_global_domination(f, g, dom, report)) return report;
  const auto diff = [&](PointIndex x) { return difference(f[x], scale(r, g[x])); };
  const Minimum on_domain = minimum_over(dom, diff);
  const Minimum critical = minimum_over(eps_Crit(f, eps), diff);
  const double slack = on_domain.value == critical.value ? 0.0 : on_domain.value - critical.value;
  conclude(report, slack, critical.at);
  report.detail = "inf over dom f of (f - r g) = " + std::to_string(on_domain.value) +
                  ", inf over eps-Crit f = " + std::to_string(critical.value);
  return report;
}

}  // namespace slopekit
