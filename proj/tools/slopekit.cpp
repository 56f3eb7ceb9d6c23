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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slopekit/convex1d.hpp"
#include "slopekit/errors.hpp"
#include "slopekit/generator.hpp"
#include "slopekit/io.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/suite.hpp"
#include "slopekit/tolerance.hpp"
#include "slopekit/variational.hpp"

namespace sk = slopekit;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitHypothesis = 1;
constexpr int kExitFatal = 2;
constexpr int kExitInput = 3;

void emit(const sk::Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    sk::save_json(j, out);
  }
}

sk::PointIndex resolve_point(const sk::MetricSpace& space, const std::string& id) {
  if (const auto idx = space.index_of(id)) return *idx;
  throw sk::InputError("unknown point '" + id + "'");
}

sk::Json ids(const sk::PointSet& s, const sk::MetricSpace& space) {
  sk::Json arr = sk::Json::array();
  for (sk::PointIndex p : s) arr.push_back(space.id(p));
  return arr;
}

sk::Json optional_number(const std::optional<double>& v) { return v ? sk::Json(*v) : sk::Json(nullptr); }

// --- subcommands ----------------------------------------------------------------

int cmd_validate(const std::string& path, const std::string& out) {
  const sk::Json j = sk::load_json(path);
  sk::Json report;
  if (j.contains("metric") && j["metric"].value("kind", "") == "matrix") {
    sk::Matrix dist;
    try {
      dist = j["metric"].at("dist").get<sk::Matrix>();
    } catch (const sk::Json::exception& e) {
      throw sk::InputError(std::string("malformed distance matrix: ") + e.what());
    }
    const sk::MetricReport rep = sk::validate_metric(dist);
    if (!rep.ok()) {
      emit(sk::to_json(rep), out);
      return kExitHypothesis;
    }
  }
  const sk::Instance inst = sk::instance_from_json(j);
  const sk::MetricReport rep = sk::validate_metric(inst.space->matrix());
  report = sk::to_json(rep, inst.space.get());
  report["neighborhoods_symmetric"] = inst.nbhd.is_symmetric();
  sk::Json fields = sk::Json::object();
  for (const auto& [name, _] : inst.field_values) fields[name] = {{"proper", inst.field(name).is_proper()}};
  report["fields"] = fields;
  emit(report, out);
  return rep.ok() ? kExitVerified : kExitHypothesis;
}

struct GenArgs {
  std::uint64_t seed = 0;
  std::size_t n = 6;
  std::string kind = "graph";
  double p_inf = 0.0;
  std::vector<std::string> fields{"f", "g"};
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  sk::FieldSpec spec;
  spec.names = a.fields;
  spec.p_inf = a.p_inf;
  const sk::Instance inst = sk::gen_random_instance(a.seed, a.n, sk::metric_kind_from_string(a.kind), spec);
  emit(sk::to_json(inst), a.out);
  return kExitVerified;
}

struct SlopesArgs {
  std::string instance;
  std::string field = "f";
  std::vector<double> eps;
  std::string out;
};

int cmd_slopes(const SlopesArgs& a) {
  const sk::Instance inst = sk::load_instance(a.instance);
  const sk::ScalarField f = inst.field(a.field);
  const sk::SlopeProfile prof = sk::slope_profile(f, inst.nbhd);
  sk::Json points = sk::Json::array();
  for (sk::PointIndex x = 0; x < f.size(); ++x) {
    points.push_back({{"point", inst.space->id(x)},
                      {"value", sk::ext_real_to_json(f[x])},
                      {"local", optional_number(prof.local[x])},
                      {"global", optional_number(prof.global[x])}});
  }
  sk::Json sets = sk::Json::array();
  for (double e : a.eps) {
    sets.push_back({{"eps", e},
                    {"eps_crit", ids(sk::eps_crit(f, inst.nbhd, e), *inst.space)},
                    {"eps_Crit", ids(sk::eps_Crit(f, e), *inst.space)},
                    {"eps_argmin", ids(sk::eps_argmin(f, e), *inst.space)}});
  }
  emit({{"field", a.field}, {"tolerance", sk::tolerance()}, {"slopes", points}, {"critical_sets", sets}}, a.out);
  return kExitVerified;
}

struct EvpArgs {
  std::string instance;
  std::string field = "f";
  std::string from;
  double lambda = 1.0;
  std::string out;
};

int cmd_evp(const EvpArgs& a) {
  const sk::Instance inst = sk::load_instance(a.instance);
  const sk::ScalarField f = inst.field(a.field);
  const sk::PointIndex x0 = resolve_point(*inst.space, a.from);
  const sk::PointIndex x = sk::ekeland_point(f, x0, a.lambda);
  const double rho = inst.space->distance(x0, x);
  emit({{"from", inst.space->id(x0)},
        {"lambda", a.lambda},
        {"point", inst.space->id(x)},
        {"f_from", f[x0].raw()},
        {"f_point", f[x].raw()},
        {"distance", rho},
        {"global_slope", sk::global_slope(f, x)},
        {"decrease_slack", f[x0].raw() - a.lambda * rho - f[x].raw()}},
       a.out);
  return kExitVerified;
}

struct DescentArgs {
  std::string instance;
  std::string f = "f";
  std::string g = "g";
  std::string from;
  double eps0 = 1.0;
  std::size_t count = 64;
  std::string mode = "local";
  std::string out;
};

int cmd_descent(const DescentArgs& a) {
  const sk::Instance inst = sk::load_instance(a.instance);
  const sk::ScalarField f = inst.field(a.f);
  const sk::ScalarField g = inst.field(a.g);
  const sk::PointIndex x0 = resolve_point(*inst.space, a.from);
  const sk::SlopeKind mode = a.mode == "global" ? sk::SlopeKind::kGlobal : sk::SlopeKind::kLocal;
  const sk::DescentTrace trace =
      sk::descent_to_critical(f, g, inst.nbhd, x0, sk::EpsSchedule::geometric(a.eps0, a.count), mode);
  emit(sk::to_json(trace, *inst.space), a.out);
  return kExitVerified;
}

struct CheckArgs {
  std::string instance;
  std::string which;
  std::string f = "f";
  std::string g = "g";
  double r = 0.5;
  double eps = 1.0;
  std::string out;
};

int cmd_check(const CheckArgs& a) {
  const sk::Instance inst = sk::load_instance(a.instance);
  const sk::ScalarField f = inst.field(a.f);
  const sk::ScalarField g = inst.field(a.g);
  sk::CheckReport rep;
  if (a.which == "tz") {
    rep = sk::check_tz(f, g);
  } else if (a.which == "lips") {
    rep = sk::check_lips(f, g, a.eps);
  } else if (a.which == "lsc") {
    rep = sk::check_lsc(f, g, a.r, a.eps);
  } else {
    rep = sk::check_compact(f, g, inst.nbhd);
  }
  emit(sk::to_json(rep, *inst.space), a.out);
  return rep.exit_code();
}

int cmd_mr(const std::string& fpath, const std::string& gpath, const std::string& out) {
  const sk::PLConvex f = sk::pl_convex_from_json(sk::load_json(fpath));
  const sk::PLConvex g = sk::pl_convex_from_json(sk::load_json(gpath));
  emit(sk::to_json(sk::mr_check(f, g)), out);
  return kExitVerified;
}

int cmd_suite(const std::string& config_path, const std::string& out, const std::string& csv,
              std::optional<std::size_t> threads) {
  sk::SuiteConfig config = config_path.empty() ? sk::SuiteConfig{} : sk::suite_config_from_json(sk::load_json(config_path));
  if (threads) config.threads = *threads;
  const sk::SuiteReport report = sk::run_suite(config);
  emit(sk::to_json(report), out);
  std::string csv_path = csv;
  if (csv_path.empty() && !out.empty() && out != "-") {
    const auto dot = out.rfind('.');
    csv_path = (dot == std::string::npos ? out : out.substr(0, dot)) + ".csv";
  }
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) throw sk::InputError("cannot write '" + csv_path + "'");
    os << sk::to_csv(report);
  }
  std::cerr << "suite: " << report.evaluations() << " evaluations, " << report.failures() << " failures\n";
  return report.ok() ? kExitVerified : kExitFatal;
}

sk::Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric slope analysis on finite metric spaces"};
  app.require_subcommand(1);
  std::optional<double> tol;
  app.add_option("--tol", tol, "Tolerance (overrides SLOPEKIT_TOL)");

  std::string validate_path, validate_out;
  auto* validate = app.add_subcommand("validate", "Check the metric axioms of an instance");
  validate->add_option("instance", validate_path)->required();
  validate->add_option("-o,--output", validate_out);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", gen_args.seed)->required();
  gen->add_option("--n", gen_args.n)->required();
  gen->add_option("--kind", gen_args.kind)->check(CLI::IsMember({"matrix", "graph", "grid"}));
  gen->add_option("--p-inf", gen_args.p_inf);
  gen->add_option("--fields", gen_args.fields)->delimiter(',');
  gen->add_option("-o,--output", gen_args.out);

  SlopesArgs slopes_args;
  auto* slopes = app.add_subcommand("slopes", "Local and global slopes with eps-critical sets");
  slopes->add_option("instance", slopes_args.instance)->required();
  slopes->add_option("--field", slopes_args.field);
  slopes->add_option("--eps", slopes_args.eps)->delimiter(',');
  slopes->add_option("-o,--output", slopes_args.out);

  EvpArgs evp_args;
  auto* evp = app.add_subcommand("evp", "Constructive Ekeland point");
  evp->add_option("instance", evp_args.instance)->required();
  evp->add_option("--field", evp_args.field);
  evp->add_option("--from", evp_args.from)->required();
  evp->add_option("--lambda", evp_args.lambda)->required();
  evp->add_option("-o,--output", evp_args.out);

  DescentArgs descent_args;
  auto* descent = app.add_subcommand("descent", "Descent trace to a 0-critical point");
  descent->add_option("instance", descent_args.instance)->required();
  descent->add_option("--f", descent_args.f);
  descent->add_option("--g", descent_args.g);
  descent->add_option("--from", descent_args.from)->required();
  descent->add_option("--eps0", descent_args.eps0);
  descent->add_option("--steps", descent_args.count, "Length of the eps schedule");
  descent->add_option("--mode", descent_args.mode)->check(CLI::IsMember({"local", "global"}));
  descent->add_option("-o,--output", descent_args.out);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Verify a determination result on an instance");
  check->add_option("instance", check_args.instance)->required();
  check->add_option("--which", check_args.which)->required()->check(CLI::IsMember({"tz", "lips", "lsc", "compact"}));
  check->add_option("--f", check_args.f);
  check->add_option("--g", check_args.g);
  check->add_option("--r", check_args.r);
  check->add_option("--eps", check_args.eps);
  check->add_option("-o,--output", check_args.out);

  std::string mr_f, mr_g, mr_out;
  auto* mr = app.add_subcommand("mr", "Compare two piecewise-linear convex functions");
  mr->add_option("f", mr_f)->required();
  mr->add_option("g", mr_g)->required();
  mr->add_option("-o,--output", mr_out);

  std::string suite_config, suite_out, suite_csv;
  std::optional<std::size_t> suite_threads;
  auto* suite = app.add_subcommand("suite", "Run the property suite");
  suite->add_option("--config", suite_config);
  suite->add_option("-o,--output", suite_out);
  suite->add_option("--csv", suite_csv, "CSV summary path (default: next to the report)");
  suite->add_option("--threads", suite_threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitVerified : kExitInput;
  }

  try {
    if (const char* env = std::getenv("SLOPEKIT_TOL"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw sk::InputError(std::string("SLOPEKIT_TOL is not a number: ") + env);
      sk::set_tolerance(v);
    }
    if (tol) sk::set_tolerance(*tol);

    if (*validate) return cmd_validate(validate_path, validate_out);
    if (*gen) return cmd_gen(gen_args);
    if (*slopes) return cmd_slopes(slopes_args);
    if (*evp) return cmd_evp(evp_args);
    if (*descent) return cmd_descent(descent_args);
    if (*check) return cmd_check(check_args);
    if (*mr) return cmd_mr(mr_f, mr_g, mr_out);
    if (*suite) return cmd_suite(suite_config, suite_out, suite_csv, suite_threads);
  } catch (const sk::PreconditionError& e) {
    std::cout << error_json("hypothesis_violated", e.what()).dump(2) << '\n';
    return kExitHypothesis;
  } catch (const sk::FatalFinding& e) {
    std::cout << error_json("fatal_finding", e.what()).dump(2) << '\n';
    return kExitFatal;
  } catch (const sk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
