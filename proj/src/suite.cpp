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

#include "slopekit/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "slopekit/errors.hpp"
#include "slopekit/rng.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/tolerance.hpp"
#include "slopekit/variational.hpp"

namespace slopekit {

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::kNone:
      return "none";
    case Mutation::kAsymmetricNeighborhood:
      return "asymmetric_nbhd";
    case Mutation::kTruncateSinglePoint:
      return "truncate_single_point";
    case Mutation::kEvpNoncritical:
      return "evp_noncritical";
  }
  return "unknown";
}

Mutation mutation_from_string(const std::string& s) {
  if (s == "none") return Mutation::kNone;
  if (s == "asymmetric_nbhd") return Mutation::kAsymmetricNeighborhood;
  if (s == "truncate_single_point") return Mutation::kTruncateSinglePoint;
  if (s == "evp_noncritical") return Mutation::kEvpNoncritical;
  throw ParameterError("unknown mutation '" + s + "'");
}

SuiteConfig suite_config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("suite config must be a JSON object");
  SuiteConfig c;
  try {
    if (j.contains("instances")) c.instances = j.at("instances").get<std::size_t>();
    if (j.contains("max_points")) c.max_points = j.at("max_points").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("p_inf")) c.p_inf = j.at("p_inf").get<std::vector<double>>();
    if (j.contains("kinds")) {
      c.kinds.clear();
      for (const auto& k : j.at("kinds")) c.kinds.push_back(metric_kind_from_string(k.get<std::string>()));
    }
    if (j.contains("eps_per_instance")) c.eps_per_instance = j.at("eps_per_instance").get<std::size_t>();
    if (j.contains("convex_functions") && !j.at("convex_functions").is_null()) c.convex_functions = j.at("convex_functions").get<std::size_t>();
    if (j.contains("groups")) c.groups = j.at("groups").get<std::vector<std::string>>();
    if (j.contains("mutation")) c.mutation = mutation_from_string(j.at("mutation").get<std::string>());
    if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
    if (j.contains("max_counterexamples")) c.max_counterexamples = j.at("max_counterexamples").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed suite config: ") + e.what());
  }
  if (c.max_points < 1) throw ParameterError("max_points must be at least 1");
  if (c.p_inf.empty() || c.kinds.empty()) throw ParameterError("p_inf and kinds must be nonempty");
  for (double p : c.p_inf) {
    if (!(p >= 0.0 && p < 1.0)) throw ParameterError("suite p_inf values must lie in [0, 1)");
  }
  static const std::vector<std::string> known{"metric", "calculus", "lemmas", "evp",
                                              "determination", "descent", "convex"};
  for (const auto& g : c.groups) {
    if (std::find(known.begin(), known.end(), g) == known.end()) {
      throw ParameterError("unknown check group '" + g + "'");
    }
  }
  return c;
}

Json to_json(const SuiteConfig& c) {
  Json kinds = Json::array();
  for (auto k : c.kinds) kinds.push_back(to_string(k));
  Json j{{"instances", c.instances},
         {"max_points", c.max_points},
         {"seed", c.seed},
         {"p_inf", c.p_inf},
         {"kinds", kinds},
         {"eps_per_instance", c.eps_per_instance},
         {"groups", c.groups},
         {"mutation", to_string(c.mutation)},
         {"max_counterexamples", c.max_counterexamples}};
  j["convex_functions"] = c.convex_functions ? Json(*c.convex_functions) : Json(nullptr);
  return j;
}

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tallies) n += t.failed;
  return n;
}

std::size_t SuiteReport::evaluations() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tallies) n += t.passed + t.failed;
  return n;
}

const CheckTally& SuiteReport::tally(const std::string& check) const {
  static const CheckTally empty;
  const auto it = tallies.find(check);
  return it == tallies.end() ? empty : it->second;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Brute-force slopes used as independent references for hypotheses.
double brute_rate(const ScalarField& f, PointIndex x, PointIndex y) {
  if (f[y].is_infinite()) return 0.0;
  const double drop = f[x].raw() - f[y].raw();
  return drop > 0.0 ? drop / f.space().distance(x, y) : 0.0;
}

double brute_global(const ScalarField& f, PointIndex x) {
  double best = 0.0;
  for (PointIndex y = 0; y < f.size(); ++y) {
    if (y != x) best = std::max(best, brute_rate(f, x, y));
  }
  return best;
}

double brute_local(const ScalarField& f, const NeighborhoodSystem& nbhd, PointIndex x) {
  double best = 0.0;
  for (PointIndex y : nbhd.neighbors(x)) best = std::max(best, brute_rate(f, x, y));
  return best;
}

struct Ops {
  std::function<ScalarField(const ScalarField&, double)> truncate;
  std::function<PointIndex(const ScalarField&, PointIndex, double)> ekeland;
};

Ops make_ops(Mutation m) {
  Ops ops{[](const ScalarField& g, double lambda) { return slopekit::truncate(g, lambda); },
          [](const ScalarField& f, PointIndex x0, double lambda) { return ekeland_point(f, x0, lambda); }};
  if (m == Mutation::kTruncateSinglePoint) {
    ops.truncate = [](const ScalarField& g, double lambda) {
      std::vector<ExtReal> v = g.values();
      const PointSet dom = g.domain();
      const auto top = *std::max_element(dom.begin(), dom.end(), [&](PointIndex a, PointIndex b) { return g[a] < g[b]; });
      v[top] = std::min(v[top], ExtReal{lambda});
      return ScalarField(g.space_ptr(), std::move(v));
    };
  }
  if (m == Mutation::kEvpNoncritical) {
    ops.ekeland = [](const ScalarField&, PointIndex x0, double) { return x0; };
  }
  return ops;
}

struct Outcome {
  std::string check;
  bool passed = true;
  std::string message;
  Json values;
};

/// Collects the outcomes of one instance (or one convex function).
class Recorder {
 public:
  Recorder(std::size_t index, std::uint64_t seed, Json witness)
      : index_(index), seed_(seed), witness_(std::move(witness)) {}

  void expect(const std::string& check, bool ok, const std::string& message = {}, Json values = nullptr) {
    outcomes_.push_back({check, ok, ok ? std::string() : message, ok ? Json(nullptr) : std::move(values)});
  }

  /// Runs `body`, turning library errors into a failure of `check`.
  template <typename Fn>
  void guard(const std::string& check, Fn&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(check, false, std::string("unexpected exception: ") + e.what());
    }
  }

  std::size_t index() const { return index_; }
  std::uint64_t seed() const { return seed_; }
  const Json& witness() const { return witness_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
  Json witness_;
  std::vector<Outcome> outcomes_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Json field_json(const ScalarField& g) {
  Json arr = Json::array();
  for (ExtReal v : g.values()) arr.push_back(ext_real_to_json(v));
  return arr;
}

PointIndex random_member(Rng& rng, const PointSet& s) { return s[rng.index(s.size())]; }

struct Context {
  const SuiteConfig& config;
  const Ops& ops;
  Instance inst;
  ScalarField f;
  ScalarField h;
  ScalarField q;  // finite everywhere
  NeighborhoodSystem nbhd;
  Rng rng;
  Recorder& rec;
};

// --- metric -------------------------------------------------------------------

void metric_checks(Context& c) {
  c.rec.guard("metric.axioms", [&] {
    const MetricReport rep = validate_metric(c.inst.space->matrix());
    c.rec.expect("metric.axioms", rep.ok(), rep.ok() ? "" : rep.violations.front().describe());
  });
  c.rec.expect("metric.nbhd_symmetric", c.nbhd.is_symmetric(), "neighbourhood system is not symmetric",
               Json{{"pairs", c.nbhd.pairs()}});

  if (const auto* g = std::get_if<GraphMetric>(&c.inst.metric)) {
    c.rec.guard("metric.relabel_invariance", [&] {
      const std::size_t n = c.inst.points.size();
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[c.rng.index(i)]);
      std::vector<std::string> names(n);
      for (std::size_t i = 0; i < n; ++i) names[perm[i]] = c.inst.points[i];
      std::vector<WeightedEdge> edges;
      for (const auto& e : g->edges) edges.push_back({perm[e.u], perm[e.v], e.weight});
      const SpacePtr relabeled = shortest_path_space(names, edges);
      bool same = true;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          same = same && std::abs(relabeled->distance(perm[i], perm[j]) - c.inst.space->distance(i, j)) <= tolerance();
        }
      }
      c.rec.expect("metric.relabel_invariance", same, "shortest-path distances changed under relabelling");
    });
  }

  c.rec.guard("harness.roundtrip", [&] {
    const Json j = to_json(c.inst);
    const Instance back = instance_from_json(Json::parse(j.dump()));
    c.rec.expect("harness.roundtrip", back.same_data(c.inst) && to_json(back).dump() == j.dump(),
                 "instance JSON round trip changed the data");
  });
}

// --- slope calculus -----------------------------------------------------------

double relative_error(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

void calculus_checks(Context& c) {
  const ScalarField& f = c.f;
  const double tol = tolerance();
  c.rec.guard("calculus.scaling", [&] {
    // r on multiples of 2^-28 keeps r·f exact on the generator's value grid.
    const double r = std::ldexp(static_cast<double>(c.rng.index(std::size_t{3} << 28)), -28);
    const ScalarField rf = scaled(f, r);
    double worst = 0.0;
    PointIndex at = 0;
    for (PointIndex x : f.domain()) {
      const double e = std::max(relative_error(local_slope(rf, c.nbhd, x), r * local_slope(f, c.nbhd, x)),
                                relative_error(global_slope(rf, x), r * global_slope(f, x)));
      if (e > worst) {
        worst = e;
        at = x;
      }
    }
    c.rec.expect("calculus.scaling", worst <= kScalingRelativeTolerance,
                 "slope of r f differs from r times slope of f, relative error " + fmt(worst),
                 Json{{"r", r}, {"point", c.inst.points[at]}, {"relative_error", worst}});
  });

  c.rec.guard("calculus.subadditivity", [&] {
    const ScalarField fh = sum(f, c.h);
    double worst = kInf;
    for (PointIndex x : set_intersection(f.domain(), c.h.domain())) {
      worst = std::min(worst, local_slope(f, c.nbhd, x) + local_slope(c.h, c.nbhd, x) - local_slope(fh, c.nbhd, x));
      worst = std::min(worst, global_slope(f, x) + global_slope(c.h, x) - global_slope(fh, x));
    }
    c.rec.expect("calculus.subadditivity", worst >= -tol, "slack " + fmt(worst), Json{{"slack", worst}});
  });

  c.rec.guard("calculus.difference", [&] {
    const ScalarField fq = difference(f, c.q);
    double worst = kInf;
    for (PointIndex x : f.domain()) {
      worst = std::min(worst, local_slope(fq, c.nbhd, x) - (local_slope(f, c.nbhd, x) - local_slope(c.q, c.nbhd, x)));
      worst = std::min(worst, global_slope(fq, x) - (global_slope(f, x) - global_slope(c.q, x)));
    }
    c.rec.expect("calculus.difference", worst >= -tol, "slack " + fmt(worst), Json{{"slack", worst}});
  });

  c.rec.guard("calculus.global_ge_local", [&] {
    bool ok = true;
    std::string where;
    for (PointIndex x : f.domain()) {
      if (global_slope(f, x) < local_slope(f, c.nbhd, x)) {
        ok = false;
        where = c.inst.points[x];
      }
    }
    c.rec.expect("calculus.global_ge_local", ok, "local slope exceeds global slope at " + where);
  });
}

// --- lemmas -------------------------------------------------------------------

void restriction_checks(Context& c, double s) {
  const ScalarField& f = c.f;
  const ScalarField& h = c.h;
  const PointSet both = set_intersection(f.domain(), h.domain());
  if (both.empty()) return;
  const PointIndex anchor = random_member(c.rng, both);
  const double level = difference(f[anchor], h[anchor]);
  const PointSet m1 = sublevel_diff(f, h, level);
  const double tol = tolerance();

  c.rec.guard("restriction.local", [&] {
    const Restriction r = restrict(f, m1);
    const NeighborhoodSystem sub_nbhd = r.subspace.restrict(c.nbhd);
    for (PointIndex x : set_intersection(m1, both)) {
      const double sf = local_slope(f, c.nbhd, x);
      if (!(sf > local_slope(h, c.nbhd, x))) continue;
      const double s1 = local_slope(r.field, sub_nbhd, *r.subspace.local_index(x));
      c.rec.expect("restriction.local", std::abs(s1 - sf) <= tol,
                   "restricted local slope " + fmt(s1) + " != " + fmt(sf) + " at " + c.inst.points[x],
                   Json{{"level", level}, {"point", c.inst.points[x]}, {"restricted", s1}, {"full", sf}});
    }
  });

  c.rec.guard("restriction.global", [&] {
    const Restriction r = restrict(f, m1);
    for (PointIndex x : set_intersection(m1, both)) {
      const double sf = global_slope(f, x);
      if (!(sf > global_slope(h, x))) continue;
      const double s1 = global_slope(r.field, *r.subspace.local_index(x));
      c.rec.expect("restriction.global", std::abs(s1 - sf) <= tol,
                   "restricted global slope " + fmt(s1) + " != " + fmt(sf) + " at " + c.inst.points[x],
                   Json{{"level", level}, {"point", c.inst.points[x]}, {"restricted", s1}, {"full", sf}});
    }
  });

  c.rec.guard("restriction.crit", [&] {
    const PointSet m = set_intersection(m1, eps_Crit(f, s));
    if (m.empty()) return;
    const Restriction r = restrict(f, m);
    for (PointIndex x : set_intersection(m, both)) {
      const double sf = global_slope(f, x);
      if (!(sf > global_slope(h, x))) continue;
      const double s1 = global_slope(r.field, *r.subspace.local_index(x));
      c.rec.expect("restriction.crit", std::abs(s1 - sf) <= tol,
                   "slope on L(f-g) ∩ s-Crit " + fmt(s1) + " != " + fmt(sf) + " at " + c.inst.points[x],
                   Json{{"level", level}, {"s", s}, {"point", c.inst.points[x]}, {"restricted", s1}, {"full", sf}});
    }
  });
}

void lemma_checks(Context& c) {
  const ScalarField& f = c.f;
  const double tol = tolerance();
  const std::size_t n = f.size();

  if (n >= 2) {
    c.rec.guard("slope.log_distance", [&] {
      const PointIndex a = c.rng.index(n);
      const ScalarField phi = log_distance_field(c.inst.space, a);
      double worst = kInf;
      for (PointIndex x = 0; x < n; ++x) {
        if (x == a) continue;
        worst = std::min(worst, 1.0 / c.inst.space->distance(x, a) - global_slope(phi, x));
      }
      c.rec.expect("slope.log_distance", worst >= -tol, "slope of -log d(., a) exceeds 1/d(., a)",
                   Json{{"center", c.inst.points[a]}, {"slack", worst}});
    });
  }

  c.rec.guard("slope.truncation", [&] {
    const double lambda = c.rng.uniform(f.infimum() - 0.5, f.supremum_on_domain() + 0.5);
    const ScalarField g1 = c.ops.truncate(f, lambda);
    for (PointIndex x : f.domain()) {
      const double dl = local_slope(f, c.nbhd, x) - local_slope(g1, c.nbhd, x);
      const double dg = global_slope(f, x) - global_slope(g1, x);
      c.rec.expect("slope.truncation", dl >= -tol && dg >= -tol,
                   "truncated field is steeper at " + c.inst.points[x],
                   Json{{"lambda", lambda},
                        {"point", c.inst.points[x]},
                        {"local_slack", dl},
                        {"global_slack", dg},
                        {"truncated", field_json(g1)}});
    }
  });

  c.rec.guard("slope.dom_inf", [&] {
    double on_dom = kInf;
    double on_slope_dom = kInf;
    for (PointIndex x : f.domain()) {
      const double v = difference(f[x], c.q[x]);
      on_dom = std::min(on_dom, v);
      if (std::isfinite(global_slope(f, x))) on_slope_dom = std::min(on_slope_dom, v);
    }
    c.rec.expect("slope.dom_inf", on_dom == on_slope_dom, "infima over dom f and dom |slope f| differ");
  });

  double max_slope = 0.0;
  for (PointIndex x : f.domain()) max_slope = std::max(max_slope, global_slope(f, x));
  for (std::size_t k = 0; k < c.config.eps_per_instance; ++k) {
    const double eps = std::max(1e-3, c.rng.uniform(0.0, 1.2 * std::max(max_slope, 1.0)));
    c.rec.guard("crit.lipschitz", [&] {
      const PointSet crit = eps_Crit(f, eps);
      double worst = kInf;
      for (PointIndex x : crit) {
        for (PointIndex y : crit) {
          worst = std::min(worst, eps * c.inst.space->distance(x, y) - std::abs(f[x].raw() - f[y].raw()));
        }
      }
      c.rec.expect("crit.lipschitz", worst >= -tol, "f is not eps-Lipschitz on eps-Crit f",
                   Json{{"eps", eps}, {"slack", worst}});
    });
    c.rec.guard("coincidence.pasch_hausdorff", [&] {
      const PointSet crit = eps_Crit(f, eps);
      const PointSet coin = coincidence_set(f, eps);
      c.rec.expect("coincidence.pasch_hausdorff", crit == coin,
                   "regularisation coincidence set differs from eps-Crit f",
                   Json{{"eps", eps}, {"crit", crit}, {"coincidence", coin}});
    });
    restriction_checks(c, eps);
  }
}

// --- EVP ----------------------------------------------------------------------

void evp_checks(Context& c) {
  const ScalarField& f = c.f;
  const double tol = tolerance();
  const PointIndex x0 = random_member(c.rng, f.domain());
  const double lambda = std::exp(c.rng.uniform(std::log(0.05), std::log(20.0)));
  c.rec.guard("evp.ekeland", [&] {
    const PointIndex x = c.ops.ekeland(f, x0, lambda);
    const double slope = brute_global(f, x);
    const double rho = c.inst.space->distance(x0, x);
    const Json values{{"x0", c.inst.points[x0]}, {"lambda", lambda}, {"x", c.inst.points[x]}, {"slope", slope}};
    c.rec.expect("evp.critical", slope <= lambda + tol, "returned point is not lambda-critical", values);
    c.rec.expect("evp.decrease", f[x].raw() <= f[x0].raw() - lambda * rho + tol,
                 "f(x) > f(x0) - lambda d(x0, x)", values);
    c.rec.expect("evp.classical_bound", rho <= (f[x0].raw() - f.infimum()) / lambda + tol,
                 "d(x0, x) exceeds (f(x0) - inf f) / lambda", values);
  });
}

// --- determination theorems ---------------------------------------------------

struct Hypotheses {
  bool finite_pair = true;
  bool strict_local = true;
  bool dominated_on_dom = true;
  bool dominated_everywhere = true;
};

Hypotheses brute_hypotheses(const ScalarField& f, const ScalarField& g, const NeighborhoodSystem& nbhd) {
  const double tol = tolerance();
  Hypotheses h;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f[x].is_infinite() || g[x].is_infinite()) h.finite_pair = false;
  }
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f[x].is_infinite()) continue;
    if (g[x].is_infinite()) {
      h.dominated_on_dom = false;
      continue;
    }
    if (brute_global(g, x) > brute_global(f, x) + tol) h.dominated_on_dom = false;
  }
  h.dominated_everywhere = h.finite_pair && h.dominated_on_dom;
  if (h.finite_pair) {
    for (PointIndex x = 0; x < f.size(); ++x) {
      const double sf = brute_local(f, nbhd, x);
      if (sf > tol && !(sf > brute_local(g, nbhd, x))) h.strict_local = false;
    }
  }
  return h;
}

/// Hypothesis classification must agree with the brute-force reference;
/// with the hypothesis in force the conclusion must verify.
void classify(Context& c, const std::string& check, const CheckReport& rep, bool expected_hypothesis,
              const Json& pair_values) {
  const bool got = rep.hypothesis == HypothesisStatus::kSatisfied;
  Json values = pair_values;
  values["report"] = to_json(rep, *c.inst.space);
  c.rec.expect(check + ".classification", got == expected_hypothesis && rep.exit_code() != 2,
               "hypothesis classified as " + to_string(rep.hypothesis) + ", brute force says " +
                   (expected_hypothesis ? "satisfied" : "violated"),
               values);
  if (got) {
    c.rec.expect(check, rep.conclusion == ConclusionStatus::kVerified,
                 "conclusion falsified with hypothesis satisfied (slack " + fmt(rep.slack) + ")", values);
  }
}

void run_checks_on_pair(Context& c, const ScalarField& g, const std::string& prefix, const Json& meta) {
  const ScalarField& f = c.f;
  const Hypotheses hyp = brute_hypotheses(f, g, c.nbhd);
  const double eps = std::max(1e-3, c.rng.uniform(0.0, 2.0));
  const double r = c.rng.uniform(0.05, 0.95);
  Json values = meta;
  values["g"] = field_json(g);
  values["eps"] = eps;
  values["r"] = r;

  c.rec.guard(prefix + "tz", [&] { classify(c, prefix + "tz", check_tz(f, g), hyp.dominated_on_dom, values); });
  c.rec.guard(prefix + "lips",
              [&] { classify(c, prefix + "lips", check_lips(f, g, eps), hyp.dominated_everywhere, values); });
  c.rec.guard(prefix + "lsc",
              [&] { classify(c, prefix + "lsc", check_lsc(f, g, r, eps), hyp.dominated_on_dom, values); });
  c.rec.guard(prefix + "compact", [&] {
    classify(c, prefix + "compact", check_compact(f, g, c.nbhd), hyp.finite_pair && hyp.strict_local, values);
  });
}

void determination_checks(Context& c) {
  const ScalarField& f = c.f;
  const double tol = tolerance();
  const std::uint64_t base = Rng::derive(c.rec.seed(), 0xD0);
  for (DominationMode mode : {DominationMode::kTruncate, DominationMode::kScale, DominationMode::kCompose}) {
    const std::string prefix = "determination." + to_string(mode) + ".";
    c.rec.guard(prefix + "pair", [&] {
      const DominatedPair pair = gen_dominated_pair(Rng::derive(base, static_cast<std::uint64_t>(mode)), f, mode);
      const bool independent = !find_domination_failure(pair.f, pair.g).has_value();
      c.rec.expect("generator.domination", independent, "emitted pair is not dominated");
      Json meta{{"mode", to_string(mode)}};
      if (pair.level) meta["level"] = *pair.level;
      if (pair.factor) meta["factor"] = *pair.factor;
      run_checks_on_pair(c, pair.g, prefix, meta);

      // Corollary: one scaled global step under non-strict domination.
      const PointIndex x0 = random_member(c.rng, f.domain());
      const double eps = std::max(1e-3, c.rng.uniform(0.0, 2.0));
      const double r = c.rng.uniform(0.05, 0.95);
      const PointIndex x = scaled_descent_step(f, pair.g, x0, eps, r);
      const double rho = c.inst.space->distance(x, x0);
      const bool ok = brute_global(f, x) <= eps + tol && f[x].raw() <= f[x0].raw() - eps * rho + tol &&
                      f[x].raw() - r * pair.g[x].raw() <= f[x0].raw() - r * pair.g[x0].raw() + tol;
      c.rec.expect("determination.scaled_step", ok, "scaled descent step misses a conclusion",
                   Json{{"mode", to_string(mode)}, {"x0", c.inst.points[x0]}, {"x", c.inst.points[x]},
                        {"eps", eps}, {"r", r}, {"g", field_json(pair.g)}});
    });
  }

  // Pairs that usually violate the hypotheses: classification only.
  c.rec.guard("determination.violating", [&] {
    run_checks_on_pair(c, scaled(f, 1.5), "determination.violating.", Json{{"mode", "1.5f"}});
    run_checks_on_pair(c, c.q, "determination.violating.", Json{{"mode", "random"}});
  });
}

// --- descent ------------------------------------------------------------------

void descent_checks(Context& c) {
  const ScalarField& f = c.f;
  const double tol = tolerance();
  const double r = c.rng.uniform(0.05, 0.95);
  const ScalarField g = scaled(f, r);
  const PointIndex x0 = random_member(c.rng, f.domain());
  const std::size_t n = f.size();

  c.rec.guard("descent.trace", [&] {
    const DescentTrace t = descent_to_critical(f, g, c.nbhd, x0);
    Json values{{"r", r}, {"x0", c.inst.points[x0]}, {"trace", to_json(t, *c.inst.space)}};
    c.rec.expect("descent.terminates", t.terminal == TraceTerminal::kReachedCritical && t.steps() <= n,
                 "trace did not reach 0-crit within n_points steps", values);
    c.rec.expect("descent.critical", brute_local(f, c.nbhd, t.last()) <= tol, "final point is not in 0-crit f",
                 values);
    double budget = 0.0;
    bool mda = true;
    bool bala = true;
    bool nested = true;
    for (std::size_t k = 0; k < t.steps(); ++k) {
      const PointIndex a = t.points[k];
      const PointIndex b = t.points[k + 1];
      const double rho = c.inst.space->distance(a, b);
      budget += t.eps[k] * rho;
      mda = mda && f[b].raw() <= f[a].raw() - t.eps[k] * rho + tol;
      bala = bala && difference(f[b], g[b]) <= difference(f[a], g[a]) + tol;
      if (k + 1 < t.steps()) {
        const PointSet outer = sublevel_diff(f, g, t.levels[k]);
        const PointSet inner = sublevel_diff(f, g, t.levels[k + 1]);
        nested = nested && std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
      }
    }
    for (std::size_t k = 1; k < t.eps.size(); ++k) mda = mda && t.eps[k] < t.eps[k - 1];
    c.rec.expect("descent.sufficient_decrease", mda, "a step violates f(x_{n+1}) <= f(x_n) - eps d", values);
    c.rec.expect("descent.monotone_difference", bala, "f - g increased along the trace", values);
    c.rec.expect("descent.budget", budget <= f[x0].raw() - f.infimum() + tol,
                 "sum eps d = " + fmt(budget) + " exceeds f(x0) - inf f", values);
    c.rec.expect("descent.nested_levels", nested, "constraint sets are not nested", values);
  });

  c.rec.guard("descent.global_step", [&] {
    const double eps = std::max(1e-3, c.rng.uniform(0.0, 2.0));
    const PointIndex x = descent_step(f, g, c.nbhd, x0, eps, SlopeKind::kGlobal);
    const double rho = c.inst.space->distance(x, x0);
    const bool ok = brute_global(f, x) <= eps + tol && f[x].raw() <= f[x0].raw() - eps * rho + tol &&
                    difference(f[x], g[x]) <= difference(f[x0], g[x0]) + tol;
    c.rec.expect("descent.global_step", ok, "global descent step misses a conclusion",
                 Json{{"x0", c.inst.points[x0]}, {"x", c.inst.points[x]}, {"eps", eps}, {"r", r}});
  });
}

// --- convex 1-D ---------------------------------------------------------------

/// max over affine pieces, built without PLConvex::operator().
struct AffineMax {
  std::vector<double> slope;
  std::vector<double> intercept;

  explicit AffineMax(const PLConvex& f) {
    const auto& t = f.knots();
    const auto& s = f.slopes();
    double x = t[0];
    double y = f.anchor();
    slope.push_back(s[0]);
    intercept.push_back(y - s[0] * x);
    for (std::size_t i = 1; i < s.size(); ++i) {
      slope.push_back(s[i]);
      intercept.push_back(y - s[i] * x);
      if (i < t.size()) {
        y += s[i] * (t[i] - x);
        x = t[i];
      }
    }
  }

  double operator()(double x) const {
    double best = -kInf;
    for (std::size_t i = 0; i < slope.size(); ++i) best = std::max(best, slope[i] * x + intercept[i]);
    return best;
  }
};

/// sup over sampled y of [f(x) - f(y)]^+ / |x - y| with offsets spread
/// geometrically over [1e-3, 10] on both sides (samples points in total).
double sampled_global_slope(const AffineMax& f, double x, std::size_t samples) {
  const std::size_t half = samples / 2;
  const double fx = f(x);
  double best = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const double h = std::pow(10.0, -3.0 + 4.0 * static_cast<double>(k) / static_cast<double>(half - 1));
    for (double y : {x - h, x + h}) best = std::max(best, std::max(0.0, fx - f(y)) / h);
  }
  return best;
}

void convex_checks(Rng& rng, Recorder& rec) {
  const double tol = tolerance();
  const PLConvex f = gen_pl_convex(rng.next());
  const AffineMax oracle(f);

  rec.guard("convex.slope_definitional", [&] {
    const auto& t = f.knots();
    std::vector<double> probes{t.front() - 1.0, t.back() + 1.0};
    for (std::size_t i = 0; i < t.size(); ++i) {
      probes.push_back(t[i]);
      if (i + 1 < t.size()) probes.push_back(0.5 * (t[i] + t[i + 1]));
    }
    for (double x : probes) {
      const double want = sampled_global_slope(oracle, x, 10000);
      const double got = slope_pl(f, x);
      rec.expect("convex.slope_definitional", std::abs(got - want) <= tol,
                 "slope_pl " + fmt(got) + " vs sampled " + fmt(want) + " at " + fmt(x),
                 Json{{"f", to_json(f)}, {"x", x}});
    }
  });

  rec.guard("convex.mr_constant", [&] {
    const double anchor = rng.uniform(-5.0, 5.0);
    const PLConvex g(f.knots(), f.slopes(), anchor);
    const MrResult res = mr_check(f, g);
    const bool ok = res.constant && std::abs(*res.constant - (f.anchor() - anchor)) <= tol &&
                    res.max_deviation <= tol;
    rec.expect("convex.mr_constant", ok, "identical slope data not reported as a constant shift",
               Json{{"f", to_json(f)}, {"g", to_json(g)}, {"result", to_json(res)}});
  });

  rec.guard("convex.mr_mutation", [&] {
    std::vector<double> s = f.slopes();
    const std::size_t i = rng.index(s.size());
    double room = kInf;
    if (i > 0) room = std::min(room, s[i] - s[i - 1]);
    if (i + 1 < s.size()) room = std::min(room, s[i + 1] - s[i]);
    const double delta = std::min(rng.uniform(1e-3, 0.5), 0.5 * room);
    s[i] += rng.bernoulli(0.5) ? delta : -delta;
    const PLConvex g(f.knots(), s, f.anchor());
    const MrResult res = mr_check(f, g);
    rec.expect("convex.mr_mutation", !res.matches(), "perturbed slope data reported as a constant shift",
               Json{{"f", to_json(f)}, {"g", to_json(g)}});
  });

  rec.guard("convex.sampled_field", [&] {
    const GridAxis axis{f.knots().front() - 1.0, f.knots().back() + 1.0, 41};
    const GridSpace grid = grid_space(std::span<const GridAxis>(&axis, 1), 2.0);
    const ScalarField sf = sample_to_field(f, grid);
    double worst = kInf;
    for (PointIndex x = 1; x + 1 < sf.size(); ++x) {
      worst = std::min(worst, slope_pl(f, grid.coords[x][0]) - global_slope(sf, x));
    }
    rec.expect("convex.sampled_field", worst >= -tol, "discrete slope exceeds the subdifferential slope",
               Json{{"f", to_json(f)}, {"slack", worst}});

    // g = r f has min-norm slope r |slope f| <= |slope f|.
    const double r = rng.uniform(0.0, 1.0);
    std::vector<double> rs = f.slopes();
    for (double& v : rs) v *= r;
    std::vector<double> gs;
    bool strictly_increasing = true;
    for (std::size_t k = 0; k < rs.size(); ++k) strictly_increasing = strictly_increasing && (k == 0 || rs[k] > rs[k - 1]);
    if (!strictly_increasing) return;
    const PLConvex g(f.knots(), rs, r * f.anchor());
    const CheckReport rep = check_tz(sf, sample_to_field(g, grid));
    rec.expect("convex.tz_sampled",
               rep.hypothesis == HypothesisStatus::kSatisfied && rep.conclusion == ConclusionStatus::kVerified,
               "check_tz failed on a dominated convex pair", Json{{"f", to_json(f)}, {"r", r}});
  });
}

// --- driver -------------------------------------------------------------------

bool wants(const SuiteConfig& c, const std::string& group) {
  return c.groups.empty() || std::find(c.groups.begin(), c.groups.end(), group) != c.groups.end();
}

NeighborhoodSystem break_symmetry(const NeighborhoodSystem& nbhd) {
  std::vector<std::vector<PointIndex>> lists(nbhd.size());
  for (std::size_t x = 0; x < nbhd.size(); ++x) lists[x] = nbhd.neighbors(x);
  const auto pairs = nbhd.pairs();
  if (!pairs.empty()) {
    auto& l = lists[pairs.front().first];
    l.erase(std::find(l.begin(), l.end(), pairs.front().second));
  }
  return NeighborhoodSystem::from_lists_unchecked(std::move(lists));
}

Recorder run_instance(const SuiteConfig& config, const Ops& ops, std::size_t index) {
  const std::uint64_t seed = Rng::derive(config.seed, index);
  Rng rng(seed);
  MetricKind kind = config.kinds[index % config.kinds.size()];
  const double p_inf = config.p_inf[(index / config.kinds.size()) % config.p_inf.size()];
  if (kind == MetricKind::kGrid && config.max_points < 2) kind = MetricKind::kMatrix;
  const std::size_t n =
      kind == MetricKind::kGrid ? 2 + rng.index(config.max_points - 1) : 1 + rng.index(config.max_points);

  FieldSpec spec;
  spec.names = {"f", "h"};
  spec.p_inf = p_inf;
  Instance inst = gen_random_instance(rng.next(), n, kind, spec);
  std::vector<ExtReal> qv;
  for (std::size_t i = 0; i < n; ++i) qv.emplace_back(rng.uniform(0.0, 3.0));
  inst.field_values["q"] = qv;

  Recorder rec(index, seed, to_json(inst));
  NeighborhoodSystem nbhd =
      config.mutation == Mutation::kAsymmetricNeighborhood ? break_symmetry(inst.nbhd) : inst.nbhd;
  Context c{config, ops, inst, inst.field("f"), inst.field("h"), inst.field("q"), std::move(nbhd), Rng(rng.next()), rec};

  if (wants(config, "metric")) metric_checks(c);
  if (wants(config, "calculus")) calculus_checks(c);
  if (wants(config, "lemmas")) lemma_checks(c);
  if (wants(config, "evp")) evp_checks(c);
  if (wants(config, "determination")) determination_checks(c);
  if (wants(config, "descent")) descent_checks(c);
  return rec;
}

Recorder run_convex(const SuiteConfig& config, std::size_t index) {
  const std::uint64_t seed = Rng::derive(config.seed ^ 0xC0C0C0C0ULL, index);
  Rng rng(seed);
  Recorder rec(index, seed, nullptr);
  convex_checks(rng, rec);
  return rec;
}

template <typename Job>
std::vector<Recorder> run_parallel(std::size_t count, std::size_t threads, Job job) {
  std::vector<std::optional<Recorder>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(job(i));
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::vector<Recorder> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void aggregate(SuiteReport& report, const std::vector<Recorder>& recorders) {
  std::map<std::string, std::size_t> archived;
  for (const auto& rec : recorders) {
    for (const auto& o : rec.outcomes()) {
      auto& t = report.tallies[o.check];
      if (o.passed) {
        ++t.passed;
        continue;
      }
      ++t.failed;
      if (archived[o.check]++ >= report.config.max_counterexamples) continue;
      Json witness{{"check", o.check}, {"values", o.values}};
      if (!rec.witness().is_null()) witness["instance"] = rec.witness();
      report.counterexamples.push_back({o.check, rec.index(), rec.seed(), o.message, std::move(witness)});
    }
  }
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.config = config;
  const std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  const Ops ops = make_ops(config.mutation);

  aggregate(report, run_parallel(config.instances, threads,
                                 [&](std::size_t i) { return run_instance(config, ops, i); }));
  if (wants(config, "convex")) {
    const std::size_t count = config.convex_functions.value_or(std::min<std::size_t>(config.instances, 200));
    aggregate(report, run_parallel(count, threads, [&](std::size_t i) { return run_convex(config, i); }));
  }
  return report;
}

Json to_json(const SuiteReport& report) {
  Json checks = Json::object();
  for (const auto& [name, t] : report.tallies) checks[name] = Json{{"passed", t.passed}, {"failed", t.failed}};
  Json cex = Json::array();
  for (const auto& c : report.counterexamples) {
    cex.push_back(Json{{"check", c.check}, {"index", c.index}, {"seed", c.seed}, {"message", c.message},
                       {"witness", c.witness}});
  }
  return Json{{"config", to_json(report.config)},
              {"summary", {{"evaluations", report.evaluations()}, {"failures", report.failures()}, {"ok", report.ok()}}},
              {"checks", checks},
              {"counterexamples", cex}};
}

std::string to_csv(const SuiteReport& report) {
  std::ostringstream os;
  os << "check,passed,failed\n";
  for (const auto& [name, t] : report.tallies) os << name << ',' << t.passed << ',' << t.failed << '\n';
  return os.str();
}

}  // namespace slopekit
