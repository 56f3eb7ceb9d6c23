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

#include "slopekit/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "slopekit/errors.hpp"

namespace slopekit {
namespace {

double initial_tolerance() noexcept {
  const char* env = std::getenv("SLOPEKIT_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || !std::isfinite(v) || v <= 0.0) return kDefaultTolerance;
  return v;
}

std::atomic<double>& tolerance_slot() noexcept {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

}  // namespace

double tolerance() noexcept { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!std::isfinite(tol) || tol <= 0.0) {
    throw ParameterError("tolerance must be positive and finite, got " + std::to_string(tol));
  }
  tolerance_slot().store(tol, std::memory_order_relaxed);
}

ScopedTolerance::ScopedTolerance(double tol) : saved_(tolerance()) { set_tolerance(tol); }

ScopedTolerance::~ScopedTolerance() { tolerance_slot().store(saved_, std::memory_order_relaxed); }

}  // namespace slopekit
