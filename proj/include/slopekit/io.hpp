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

#include <string>
#include <vector>

#include "json.hpp"
#include "slopekit/convex1d.hpp"
#include "slopekit/instance.hpp"
#include "slopekit/metric_space.hpp"
#include "slopekit/variational.hpp"

namespace slopekit {

using Json = nlohmann::json;

// Instance file:
//   { "points": [...],
//     "metric": {"kind": "matrix", "dist": [[...]]}
//             | {"kind": "graph", "edges": [[i, j, w], ...]}
//             | {"kind": "grid", "bounds": [[lo, hi], ...], "resolution": [n, ...], "p": x | "inf"},
//     "neighborhoods": {"kind": "ball", "r": x} | {"kind": "explicit", "adj": [[i, j], ...]}
//                    | {"kind": "all"},
//     "fields": {"name": [x | "inf", ...]},
//     "seed": s, "provenance": {...} }          (seed and provenance optional)

Json ext_real_to_json(ExtReal v);
ExtReal ext_real_from_json(const Json& j);

Json to_json(const Instance& inst);
/// Parses and realises an instance; throws InputError on malformed data.
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);
void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

/// {"knots": [...], "slopes": [...], "anchor": v}
Json to_json(const PLConvex& f);
PLConvex pl_convex_from_json(const Json& j);

Json to_json(const MetricReport& report, const MetricSpace* space = nullptr);
Json to_json(const CheckReport& report, const MetricSpace& space);
Json to_json(const DescentTrace& trace, const MetricSpace& space);
Json to_json(const MrResult& result);

}  // namespace slopekit
