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

// Python module `slopekit._core`. Instances, reports and configs cross the
// boundary as JSON text; the package wrapper converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "slopekit/convex1d.hpp"
#include "slopekit/errors.hpp"
#include "slopekit/generator.hpp"
#include "slopekit/io.hpp"
#include "slopekit/slope.hpp"
#include "slopekit/suite.hpp"
#include "slopekit/tolerance.hpp"
#include "slopekit/variational.hpp"

namespace py = pybind11;
namespace sk = slopekit;

namespace {

sk::Instance parse_instance(const std::string& text) {
  sk::Json j;
  try {
    j = sk::Json::parse(text);
  } catch (const sk::Json::exception& e) {
    throw sk::InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  return sk::instance_from_json(j);
}

sk::PointIndex resolve(const sk::MetricSpace& space, const std::string& id) {
  const auto i = space.index_of(id);
  if (!i) throw sk::InputError("unknown point '" + id + "'");
  return *i;
}

std::vector<std::string> ids(const sk::PointSet& set, const sk::MetricSpace& space) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (sk::PointIndex x : set) out.push_back(space.id(x));
  return out;
}

sk::SlopeKind slope_kind(const std::string& mode) {
  if (mode == "local") return sk::SlopeKind::kLocal;
  if (mode == "global") return sk::SlopeKind::kGlobal;
  throw sk::ParameterError("mode must be 'local' or 'global', got '" + mode + "'");
}

sk::PLConvex parse_pl(const std::string& text) { return sk::pl_convex_from_json(sk::Json::parse(text)); }

py::dict slopes(const std::string& inst_text, const std::string& field) {
  const sk::Instance inst = parse_instance(inst_text);
  const sk::SlopeProfile prof = sk::slope_profile(inst.field(field), inst.nbhd);
  py::dict local, global;
  for (sk::PointIndex x = 0; x < inst.space->size(); ++x) {
    const py::str id(inst.space->id(x));
    local[id] = prof.local[x] ? py::cast(*prof.local[x]) : py::none();
    global[id] = prof.global[x] ? py::cast(*prof.global[x]) : py::none();
  }
  py::dict out;
  out["local"] = local;
  out["global"] = global;
  return out;
}

std::vector<std::string> critical_set(const std::string& inst_text, const std::string& field, double eps,
                                      const std::string& mode) {
  const sk::Instance inst = parse_instance(inst_text);
  const sk::ScalarField f = inst.field(field);
  const sk::PointSet set =
      slope_kind(mode) == sk::SlopeKind::kLocal ? sk::eps_crit(f, inst.nbhd, eps) : sk::eps_Crit(f, eps);
  return ids(set, *inst.space);
}

std::vector<std::optional<double>> pasch_hausdorff(const std::string& inst_text, const std::string& field,
                                                   double eps) {
  const sk::Instance inst = parse_instance(inst_text);
  const sk::ScalarField h = sk::pasch_hausdorff(inst.field(field), eps);
  std::vector<std::optional<double>> out;
  for (sk::PointIndex x = 0; x < h.size(); ++x) {
    out.push_back(h[x].is_infinite() ? std::nullopt : std::optional<double>(h[x].raw()));
  }
  return out;
}

std::string ekeland(const std::string& inst_text, const std::string& field, const std::string& from,
                    double lambda) {
  const sk::Instance inst = parse_instance(inst_text);
  return inst.space->id(sk::ekeland_point(inst.field(field), resolve(*inst.space, from), lambda));
}

std::string descent(const std::string& inst_text, const std::string& f, const std::string& g,
                    const std::string& from, double eps0, std::size_t steps, const std::string& mode) {
  const sk::Instance inst = parse_instance(inst_text);
  const sk::DescentTrace trace =
      sk::descent_to_critical(inst.field(f), inst.field(g), inst.nbhd, resolve(*inst.space, from),
                              sk::EpsSchedule::geometric(eps0, steps), slope_kind(mode));
  return sk::to_json(trace, *inst.space).dump();
}

std::string check(const std::string& which, const std::string& inst_text, const std::string& f_name,
                  const std::string& g_name, double r, double eps) {
  const sk::Instance inst = parse_instance(inst_text);
  const sk::ScalarField f = inst.field(f_name);
  const sk::ScalarField g = inst.field(g_name);
  sk::CheckReport rep;
  if (which == "tz") {
    rep = sk::check_tz(f, g);
  } else if (which == "lips") {
    rep = sk::check_lips(f, g, eps);
  } else if (which == "lsc") {
    rep = sk::check_lsc(f, g, r, eps);
  } else if (which == "compact") {
    rep = sk::check_compact(f, g, inst.nbhd);
  } else {
    throw sk::ParameterError("unknown check '" + which + "'");
  }
  return sk::to_json(rep, *inst.space).dump();
}

std::string gen_instance(std::uint64_t seed, std::size_t n, const std::string& kind, double p_inf,
                         std::vector<std::string> fields) {
  sk::FieldSpec spec;
  spec.p_inf = p_inf;
  spec.names = std::move(fields);
  return sk::to_json(sk::gen_random_instance(seed, n, sk::metric_kind_from_string(kind), spec)).dump();
}

std::string run_suite(const std::string& config_text, std::size_t threads) {
  sk::SuiteConfig c = sk::suite_config_from_json(sk::Json::parse(config_text));
  if (threads > 0) c.threads = threads;
  return sk::to_json(sk::run_suite(c)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of slopekit";

  auto base = py::register_exception<sk::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sk::ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<sk::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<sk::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<sk::InputError>(m, "InputError", base.ptr());
  py::register_exception<sk::PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<sk::FatalFinding>(m, "FatalFinding", base.ptr());

  m.def("tolerance", &sk::tolerance);
  m.def("set_tolerance", &sk::set_tolerance, py::arg("tol"));

  m.def(
      "validate_metric", [](const sk::Matrix& d) { return sk::to_json(sk::validate_metric(d)).dump(); },
      py::arg("dist"));
  m.def("gen_instance", &gen_instance, py::arg("seed"), py::arg("n"), py::arg("kind"), py::arg("p_inf"),
        py::arg("fields"));
  m.def(
      "normalize_instance", [](const std::string& t) { return sk::to_json(parse_instance(t)).dump(); },
      py::arg("instance"));

  m.def("slopes", &slopes, py::arg("instance"), py::arg("field"));
  m.def("critical_set", &critical_set, py::arg("instance"), py::arg("field"), py::arg("eps"), py::arg("mode"));
  m.def("pasch_hausdorff", &pasch_hausdorff, py::arg("instance"), py::arg("field"), py::arg("eps"));
  m.def("ekeland_point", &ekeland, py::arg("instance"), py::arg("field"), py::arg("start"), py::arg("lam"));
  m.def("descent", &descent, py::arg("instance"), py::arg("f"), py::arg("g"), py::arg("start"), py::arg("eps0"),
        py::arg("steps"), py::arg("mode"));
  m.def("check", &check, py::arg("which"), py::arg("instance"), py::arg("f"), py::arg("g"), py::arg("r"),
        py::arg("eps"));

  m.def(
      "slope_pl", [](const std::string& f, double x) { return sk::slope_pl(parse_pl(f), x); }, py::arg("f"),
      py::arg("x"));
  m.def(
      "subdifferential",
      [](const std::string& f, double x) {
        const sk::Interval d = sk::subdifferential(parse_pl(f), x);
        return std::make_pair(d.lo, d.hi);
      },
      py::arg("f"), py::arg("x"));
  m.def(
      "mr_check", [](const std::string& f, const std::string& g) {
        return sk::to_json(sk::mr_check(parse_pl(f), parse_pl(g))).dump();
      },
      py::arg("f"), py::arg("g"));

  m.def("run_suite", &run_suite, py::arg("config"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
}
