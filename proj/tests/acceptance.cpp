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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "slopekit/suite.hpp"
#include "slopekit/tolerance.hpp"

using namespace slopekit;

namespace {

constexpr double kPinnedTolerance = 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Timed {
  SuiteReport report;
  double seconds = 0.0;
};

Timed timed_run(const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report = run_suite(config);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return {std::move(report), dt.count()};
}

SuiteConfig base(std::vector<std::string> groups, std::size_t instances) {
  SuiteConfig c;
  c.instances = instances;
  c.max_points = 12;
  c.p_inf = {0.0, 0.2};
  c.kinds = {MetricKind::kMatrix, MetricKind::kGraph, MetricKind::kGrid};
  c.groups = std::move(groups);
  c.convex_functions = 0;
  return c;
}

/// Every listed check ran at least `min_runs` times with zero failures.
Verdict require_clean(const SuiteReport& r, const std::vector<std::string>& checks, std::size_t min_runs) {
  Verdict v;
  std::size_t runs = 0;
  for (const auto& name : checks) {
    const CheckTally& t = r.tally(name);
    runs += t.passed + t.failed;
    if (t.failed > 0) {
      v.pass = false;
      v.detail += " " + name + " failed " + std::to_string(t.failed) + "x;";
    }
    if (t.passed + t.failed < min_runs) {
      v.pass = false;
      v.detail += " " + name + " ran only " + std::to_string(t.passed + t.failed) + "x;";
    }
  }
  v.detail = std::to_string(runs) + " evaluations" + (v.detail.empty() ? "" : ":" + v.detail);
  return v;
}

Verdict criterion1() {
  const Timed run = timed_run(base({"calculus"}, 1000));
  Verdict v = require_clean(run.report,
                            {"calculus.scaling", "calculus.subadditivity", "calculus.difference",
                             "calculus.global_ge_local"},
                            1000);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.2f s", run.seconds);
  v.detail += buf;
  if (run.seconds > 10.0) v.pass = false;
  return v;
}

Verdict criterion2() {
  SuiteConfig c = base({"lemmas"}, 1000);
  c.eps_per_instance = 3;
  const SuiteReport r = run_suite(c);
  Verdict v = require_clean(r,
                            {"slope.truncation", "crit.lipschitz", "coincidence.pasch_hausdorff",
                             "slope.dom_inf"},
                            1000);
  // Single-point spaces have no log-distance field; the restriction
  // lemmas only apply at qualifying points.
  const Verdict w = require_clean(r, {"slope.log_distance", "restriction.local", "restriction.global",
                                      "restriction.crit"},
                                  1);
  v.pass = v.pass && w.pass && r.tally("crit.lipschitz").passed == 3000;
  v.detail += "; " + w.detail;
  return v;
}

Verdict criterion3() {
  return require_clean(run_suite(base({"evp"}, 1000)), {"evp.critical", "evp.decrease", "evp.classical_bound"}, 1000);
}

Verdict criterion4() {
  const SuiteReport r = run_suite(base({"determination"}, 1000));
  std::vector<std::string> checks{"generator.domination", "determination.scaled_step"};
  for (const char* mode : {"truncate", "scale", "compose"}) {
    for (const char* which : {"tz", "lips", "lsc", "compact"}) {
      checks.push_back(std::string("determination.") + mode + "." + which + ".classification");
    }
  }
  Verdict v = require_clean(r, checks, 1000);
  // Conclusions are evaluated wherever the hypothesis holds.
  std::vector<std::string> conclusions;
  for (const char* mode : {"truncate", "scale", "compose"}) {
    for (const char* which : {"tz", "lips", "lsc", "compact"}) conclusions.push_back(std::string("determination.") + mode + "." + which);
  }
  const Verdict w = require_clean(r, conclusions, 1);
  const Verdict violating = require_clean(
      r, {"determination.violating.tz.classification", "determination.violating.lips.classification", "determination.violating.lsc.classification",
          "determination.violating.compact.classification"},
      1000);
  v.pass = v.pass && w.pass && violating.pass;
  v.detail += "; conclusions " + w.detail + "; violating pairs " + violating.detail;
  return v;
}

Verdict criterion5() {
  return require_clean(run_suite(base({"descent"}, 500)),
                       {"descent.terminates", "descent.critical", "descent.sufficient_decrease",
                        "descent.monotone_difference", "descent.budget", "descent.nested_levels"},
                       500);
}

Verdict criterion6() {
  SuiteConfig c = base({"convex"}, 0);
  c.convex_functions = 200;
  const SuiteReport r = run_suite(c);
  Verdict v = require_clean(r, {"convex.mr_constant", "convex.mr_mutation"}, 200);
  const Verdict w = require_clean(r, {"convex.slope_definitional"}, 200);
  v.pass = v.pass && w.pass;
  v.detail += "; slope probes " + w.detail;
  return v;
}

Verdict criterion7() {
  const std::pair<Mutation, const char*> cases[] = {
      {Mutation::kAsymmetricNeighborhood, "metric.nbhd_symmetric"},
      {Mutation::kTruncateSinglePoint, "slope.truncation"},
      {Mutation::kEvpNoncritical, "evp.critical"},
  };
  Verdict v;
  for (const auto& [mutation, check] : cases) {
    SuiteConfig c = base({}, 1000);
    c.mutation = mutation;
    const SuiteReport r = run_suite(c);
    std::size_t archived = 0;
    for (const auto& ce : r.counterexamples) {
      if (ce.check == check && ce.witness.contains("instance")) ++archived;
    }
    const bool caught = r.failures() > 0 && archived > 0;
    v.pass = v.pass && caught;
    v.detail += to_string(mutation) + ": " + std::to_string(r.tally(check).failed) + " failures, " +
                std::to_string(archived) + " archived; ";
  }
  return v;
}

}  // namespace

int main() {
  ScopedTolerance pinned(kPinnedTolerance);
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"slope calculus", criterion1},  {"lemma suite", criterion2}, {"EVP", criterion3},
      {"determination", criterion4},   {"descent", criterion5},     {"convex 1D", criterion6},
      {"mutation sensitivity", criterion7},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
