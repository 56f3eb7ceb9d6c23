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
#include <string>
#include <vector>

#include "slopekit/metric_space.hpp"
#include "slopekit/scalar_field.hpp"
#include "slopekit/slope.hpp"

namespace slopekit {

/// Returns x_λ with global slope <= λ and f(x_λ) <= f(x0) - λ d(x0, x_λ).
///
/// Starting from x0, repeatedly moves to the point of
/// S(x) = { y : f(y) + λ d(y,x) <= f(x) } with the smallest value
/// (ties broken by point order) until S(x) = {x}. Every move strictly
/// decreases f, so the walk stops on a finite space.
PointIndex ekeland_point(const ScalarField& f, PointIndex x0, double lambda);

/// Finds x in eps-crit f (kLocal) or eps-Crit f (kGlobal) with
/// f(x) <= f(x0) - eps d(x, x0) and (f-g)(x) <= (f-g)(x0).
///
/// Runs ekeland_point on f restricted to L_λ(f-g), λ = (f-g)(x0). Requires
/// g finite on dom f and strict slope domination |∇f| > |∇g| off 0-crit f
/// (throws PreconditionError naming the first failing point). A returned
/// point that misses a conclusion raises FatalFinding.
PointIndex descent_step(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                        PointIndex x0, double eps, SlopeKind mode);

/// Global-slope step against r·g, r in (0,1), under the non-strict
/// hypothesis |∇̃g| <= |∇̃f| on dom f. The result satisfies
/// f(x0) - r g(x0) >= f(x) - r g(x).
PointIndex scaled_descent_step(const ScalarField& f, const ScalarField& g, PointIndex x0, double eps,
                               double r);

/// Strictly decreasing positive step sizes.
class EpsSchedule {
 public:
  explicit EpsSchedule(std::vector<double> values);
  /// eps_n = eps0 / 2^n for n = 1..count.
  static EpsSchedule geometric(double eps0 = 1.0, std::size_t count = 64);

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

enum class TraceTerminal { kReachedCritical, kBudgetExhausted };

std::string to_string(TraceTerminal t);

/// Iterates of descent_to_critical. Only steps that move are recorded;
/// schedule entries at which the iterate stays put are skipped.
struct DescentTrace {
  std::vector<PointIndex> points;
  /// eps used for the step that produced points[n+1].
  std::vector<double> eps;
  std::vector<double> step_distances;
  std::vector<double> f_values;
  std::vector<double> diff_values;
  /// Sublevel threshold (f-g)(x_n) in force when leaving points[n].
  std::vector<double> levels;
  std::size_t schedule_used = 0;
  TraceTerminal terminal = TraceTerminal::kBudgetExhausted;

  std::size_t steps() const noexcept { return eps.size(); }
  PointIndex last() const { return points.back(); }
};

/// Repeated descent steps with λ_n = (f-g)(x_n) until x_n reaches
/// 0-crit f (or 0-Crit f in global mode). Running out of a schedule whose
/// final entry is already below tolerance would contradict termination on
/// a finite space and raises FatalFinding.
DescentTrace descent_to_critical(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd,
                                 PointIndex x0, const EpsSchedule& schedule = EpsSchedule::geometric(),
                                 SlopeKind mode = SlopeKind::kLocal);

// --- determination checks ---------------------------------------------------

enum class HypothesisStatus { kSatisfied, kViolated };
enum class ConclusionStatus { kVerified, kFalsified, kNotEvaluated };

std::string to_string(HypothesisStatus s);
std::string to_string(ConclusionStatus s);

struct CheckReport {
  std::string check;
  HypothesisStatus hypothesis = HypothesisStatus::kSatisfied;
  std::vector<PointIndex> violating_points;
  ConclusionStatus conclusion = ConclusionStatus::kNotEvaluated;
  std::optional<PointIndex> witness;
  /// Conclusion margin: >= -tolerance() iff the conclusion holds.
  double slack = 0.0;
  std::string detail;

  bool fatal() const noexcept {
    return hypothesis == HypothesisStatus::kSatisfied && conclusion == ConclusionStatus::kFalsified;
  }
  /// 0 verified, 1 hypothesis violated, 2 fatal finding.
  int exit_code() const noexcept;
};

/// inf(f-g) = inf over 0-crit f of (f-g) for finite f, g with
/// |∇f| > |∇g| off 0-crit f.
CheckReport check_compact(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd);

/// f(x) - inf f >= g(x) - inf g on dom f, given |∇̃g| <= |∇̃f| on dom f.
CheckReport check_tz(const ScalarField& f, const ScalarField& g);

/// inf(f-g) = inf over eps-Crit f of (f-g) for finite f, g with
/// |∇̃f| >= |∇̃g| everywhere.
CheckReport check_lips(const ScalarField& f, const ScalarField& g, double eps);

/// inf over dom f of (f - r g) = inf over eps-Crit f of (f - r g),
/// r in (0,1), given |∇̃g| <= |∇̃f| on dom f.
CheckReport check_lsc(const ScalarField& f, const ScalarField& g, double r, double eps);

}  // namespace slopekit
