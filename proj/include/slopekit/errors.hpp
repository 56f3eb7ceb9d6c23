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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace slopekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or list has the wrong dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain where the operation is defined,
/// or an extended-real expression would be undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (instance files, graphs).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The hypothesis of a descent/determination result fails at `point`.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::size_t point)
      : Error(what), point_(point) {}

  std::size_t point() const noexcept { return point_; }

 private:
  std::size_t point_;
};

/// A conclusion failed although its hypothesis held. Carries a
/// human-readable description of the witness.
class FatalFinding : public Error {
 public:
  FatalFinding(const std::string& what, std::optional<std::size_t> witness)
      : Error(what), witness_(witness) {}

  std::optional<std::size_t> witness() const noexcept { return witness_; }

 private:
  std::optional<std::size_t> witness_;
};

}  // namespace slopekit
