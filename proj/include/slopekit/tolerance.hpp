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

namespace slopekit {

inline constexpr double kDefaultTolerance = 1e-9;

/// Absolute tolerance used by every comparison in the library.
/// Initialised from SLOPEKIT_TOL when set, otherwise kDefaultTolerance.
double tolerance() noexcept;

/// Overrides the process-wide tolerance. Must be positive and finite.
void set_tolerance(double tol);

/// Restores the tolerance in effect before construction on scope exit.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double tol);
  ~ScopedTolerance();
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

}  // namespace slopekit
