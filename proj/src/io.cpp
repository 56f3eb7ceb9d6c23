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

#include "slopekit/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "slopekit/errors.hpp"

namespace slopekit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t index_value(const Json& j, std::size_t n, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw InputError(std::string(what) + " must be an integer index");
  }
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError(std::string(what) + " index out of range");
  return static_cast<std::size_t>(v);
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

Json point_ids(const std::vector<PointIndex>& pts, const MetricSpace& space) {
  Json arr = Json::array();
  for (PointIndex p : pts) arr.push_back(space.id(p));
  return arr;
}

Json metric_to_json(const MetricSpec& spec) {
  return std::visit(Overloaded{
                        [](const MatrixMetric& m) { return Json{{"kind", "matrix"}, {"dist", m.dist}}; },
                        [](const GraphMetric& g) {
                          Json edges = Json::array();
                          for (const auto& e : g.edges) edges.push_back(Json::array({e.u, e.v, e.weight}));
                          return Json{{"kind", "graph"}, {"edges", edges}};
                        },
                        [](const GridMetric& g) {
                          Json bounds = Json::array();
                          Json res = Json::array();
                          for (const auto& a : g.axes) {
                            bounds.push_back(Json::array({a.lower, a.upper}));
                            res.push_back(a.resolution);
                          }
                          return Json{{"kind", "grid"},
                                      {"bounds", bounds},
                                      {"resolution", res},
                                      {"p", std::isinf(g.p) ? Json("inf") : Json(g.p)}};
                        },
                    },
                    spec);
}

MetricSpec metric_from_json(const Json& j, std::size_t n) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "matrix") {
    MatrixMetric m;
    const Json& rows = member(j, "dist");
    if (!rows.is_array()) throw InputError("dist must be an array of rows");
    for (const auto& row : rows) m.dist.push_back(numbers(row, "dist entry"));
    return m;
  }
  if (kind == "graph") {
    GraphMetric g;
    for (const auto& e : member(j, "edges")) {
      if (!e.is_array() || e.size() != 3) throw InputError("graph edges must be [i, j, w] triples");
      g.edges.push_back({index_value(e[0], n, "edge endpoint"), index_value(e[1], n, "edge endpoint"),
                         number(e[2], "edge weight")});
    }
    return g;
  }
  if (kind == "grid") {
    GridMetric g;
    const Json& bounds = member(j, "bounds");
    const Json& res = member(j, "resolution");
    if (!bounds.is_array() || !res.is_array() || bounds.size() != res.size()) {
      throw InputError("grid bounds and resolution must be arrays of equal length");
    }
    for (std::size_t a = 0; a < bounds.size(); ++a) {
      const auto b = numbers(bounds[a], "grid bound");
      if (b.size() != 2) throw InputError("grid bounds must be [lo, hi] pairs");
      if (!res[a].is_number_integer() || res[a].get<long long>() < 0) {
        throw InputError("grid resolution must be a nonnegative integer");
      }
      g.axes.push_back({b[0], b[1], res[a].get<std::size_t>()});
    }
    const Json& p = member(j, "p");
    if (p.is_string()) {
      if (p.get<std::string>() != "inf") throw InputError("grid p must be a number or \"inf\"");
      g.p = std::numeric_limits<double>::infinity();
    } else {
      g.p = number(p, "grid p");
    }
    return g;
  }
  throw InputError("unknown metric kind '" + kind + "'");
}

Json neighborhoods_to_json(const NeighborhoodSpec& spec) {
  return std::visit(Overloaded{
                        [](const BallNeighborhoods& b) { return Json{{"kind", "ball"}, {"r", b.r}}; },
                        [](const ExplicitNeighborhoods& e) {
                          Json adj = Json::array();
                          for (const auto& [a, b] : e.adj) adj.push_back(Json::array({a, b}));
                          return Json{{"kind", "explicit"}, {"adj", adj}};
                        },
                        [](const AllNeighborhoods&) { return Json{{"kind", "all"}}; },
                    },
                    spec);
}

NeighborhoodSpec neighborhoods_from_json(const Json& j, std::size_t n) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "ball") return BallNeighborhoods{number(member(j, "r"), "ball radius")};
  if (kind == "all") return AllNeighborhoods{};
  if (kind == "explicit") {
    ExplicitNeighborhoods e;
    for (const auto& pair : member(j, "adj")) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("adjacency entries must be [i, j] pairs");
      e.adj.emplace_back(index_value(pair[0], n, "adjacency"), index_value(pair[1], n, "adjacency"));
    }
    return e;
  }
  throw InputError("unknown neighborhoods kind '" + kind + "'");
}

Json interval_to_json(const Interval& d) { return Json::array({d.lo, d.hi}); }

}  // namespace

Json ext_real_to_json(ExtReal v) { return v.is_finite() ? Json(v.raw()) : Json("inf"); }

ExtReal ext_real_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtReal::infinity();
    throw InputError("field values must be numbers or \"inf\"");
  }
  const double v = number(j, "field value");
  if (!std::isfinite(v)) throw InputError("field values must be finite numbers or \"inf\"");
  return ExtReal{v};
}

Json to_json(const Instance& inst) {
  Json fields = Json::object();
  for (const auto& [name, values] : inst.field_values) {
    Json arr = Json::array();
    for (ExtReal v : values) arr.push_back(ext_real_to_json(v));
    fields[name] = arr;
  }
  Json j{{"points", inst.points},
         {"metric", metric_to_json(inst.metric)},
         {"neighborhoods", neighborhoods_to_json(inst.neighborhoods)},
         {"fields", fields}};
  if (inst.seed) j["seed"] = *inst.seed;
  if (!inst.provenance.empty()) j["provenance"] = Json::parse(inst.provenance);
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    Instance inst;
    const Json& pts = member(j, "points");
    if (!pts.is_array()) throw InputError("points must be an array of strings");
    for (const auto& p : pts) {
      if (!p.is_string()) throw InputError("point identifiers must be strings");
      inst.points.push_back(p.get<std::string>());
    }
    const std::size_t n = inst.points.size();
    inst.metric = metric_from_json(member(j, "metric"), n);
    inst.neighborhoods = j.contains("neighborhoods") ? neighborhoods_from_json(j.at("neighborhoods"), n)
                                                     : NeighborhoodSpec{AllNeighborhoods{}};
    if (j.contains("fields")) {
      const Json& fields = j.at("fields");
      if (!fields.is_object()) throw InputError("fields must be an object");
      for (const auto& [name, values] : fields.items()) {
        if (!values.is_array()) throw InputError("field '" + name + "' must be an array");
        std::vector<ExtReal> vs;
        for (const auto& v : values) vs.push_back(ext_real_from_json(v));
        inst.field_values[name] = std::move(vs);
      }
    }
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("provenance")) inst.provenance = j.at("provenance").dump();
    inst.realize();
    return inst;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

Json to_json(const PLConvex& f) { return Json{{"knots", f.knots()}, {"slopes", f.slopes()}, {"anchor", f.anchor()}}; }

PLConvex pl_convex_from_json(const Json& j) {
  try {
    return PLConvex(numbers(member(j, "knots"), "knot"), numbers(member(j, "slopes"), "slope"),
                    number(member(j, "anchor"), "anchor"));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed piecewise-linear function: ") + e.what());
  }
}

Json to_json(const MetricReport& report, const MetricSpace* space) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item{{"kind", to_string(v.kind)}, {"i", v.i}, {"j", v.j}, {"lhs", v.lhs}, {"rhs", v.rhs}};
    if (v.via) item["via"] = *v.via;
    item["description"] = v.describe();
    violations.push_back(item);
  }
  Json j{{"ok", report.ok()}, {"violations", violations}};
  if (space) j["points"] = space->size();
  return j;
}

Json to_json(const CheckReport& report, const MetricSpace& space) {
  Json j{{"check", report.check},
         {"hypothesis", to_string(report.hypothesis)},
         {"violations", point_ids(report.violating_points, space)},
         {"conclusion", to_string(report.conclusion)},
         {"slack", report.slack},
         {"detail", report.detail},
         {"exit_code", report.exit_code()}};
  j["witness"] = report.witness ? Json(space.id(*report.witness)) : Json(nullptr);
  return j;
}

Json to_json(const DescentTrace& trace, const MetricSpace& space) {
  return Json{{"points", point_ids(trace.points, space)},
              {"eps_schedule", trace.eps},
              {"step_distances", trace.step_distances},
              {"f_values", trace.f_values},
              {"diff_values", trace.diff_values},
              {"levels", trace.levels},
              {"schedule_used", trace.schedule_used},
              {"terminal", to_string(trace.terminal)}};
}

Json to_json(const MrResult& result) {
  if (result.constant) return Json{{"constant", *result.constant}, {"max_deviation", result.max_deviation}};
  return Json{{"mismatch_at", *result.mismatch_at},
              {"subdiff_f", interval_to_json(result.subdiff_f)},
              {"subdiff_g", interval_to_json(result.subdiff_g)}};
}

}  // namespace slopekit
