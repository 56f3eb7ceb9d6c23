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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slopekit/generator.hpp"
#include "slopekit/io.hpp"

namespace slopekit {

/// Relative error allowed for the slope scaling identity.
inline constexpr double kScalingRelativeTolerance = 1e-12;

/// Deliberate faults used to confirm that the suite detects breakage.
enum class Mutation {
  kNone,
  /// Drops one direction of the first neighbour pair.
  kAsymmetricNeighborhood,
  /// Truncation applied only at the largest value.
  kTruncateSinglePoint,
  /// Ekeland point that returns its starting point unchanged.
  kEvpNoncritical,
};

std::string to_string(Mutation m);
Mutation mutation_from_string(const std::string& s);

struct SuiteConfig {
  std::size_t instances = 1000;
  std::size_t max_points = 12;
  std::uint64_t seed = 0;
  std::vector<double> p_inf{0.0, 0.2};
  std::vector<MetricKind> kinds{MetricKind::kMatrix, MetricKind::kGraph, MetricKind::kGrid};
  /// eps values drawn per instance for the eps-Crit lemmas.
  std::size_t eps_per_instance = 3;
  /// Random PL convex functions; defaults to min(instances, 200).
  std::optional<std::size_t> convex_functions;
  /// Check groups to run: metric, calculus, lemmas, evp, determination,
  /// descent, convex. Empty means all.
  std::vector<std::string> groups;
  Mutation mutation = Mutation::kNone;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// Archived counterexamples per check.
  std::size_t max_counterexamples = 5;
};

SuiteConfig suite_config_from_json(const Json& j);
Json to_json(const SuiteConfig& config);

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Counterexample {
  std::string check;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string message;
  /// Instance JSON plus the intermediate values of the failed check.
  Json witness;
};

struct SuiteReport {
  SuiteConfig config;
  std::map<std::string, CheckTally> tallies;
  std::vector<Counterexample> counterexamples;

  std::size_t failures() const;
  std::size_t evaluations() const;
  bool ok() const { return failures() == 0; }
  const CheckTally& tally(const std::string& check) const;
};

/// Runs the invariant suite over generated instances. Absolute slacks are
/// compared against tolerance(). Deterministic in the config: results are
/// aggregated by instance index.
SuiteReport run_suite(const SuiteConfig& config);

Json to_json(const SuiteReport& report);
/// check,passed,failed rows.
std::string to_csv(const SuiteReport& report);

}  // namespace slopekit
