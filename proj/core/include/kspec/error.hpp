// Copyright 2026 The kspec Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace kspec {

// Every rejection raised by the library carries one of these codes so that
// callers (and the CLI error report) can dispatch without parsing messages.
enum class ErrorCode {
  // model
  ViolatesViscosity,
  ViolatesCapillarity,
  ViolatesPressure,
  DegenerateDiscriminant,
  InvalidPressureLaw,
  DimensionTooSmall,
  ExponentPRange,
  ExponentQ1BelowDimension,
  ExponentQ2AboveDimension,
  ExponentHolderRelation,
  ExponentScaling,
  ExponentTauRange,
  ExponentQ1HalfNotNorm,
  RangeViolation,
  // grid / transforms
  ShapeMismatch,
  NotHermitian,
  InvalidGrid,
  // symbols
  WrongRegime,
  SingularSystem,
  OutsideSector,
  // nonlinear / integrator
  NonFinite,
  NoContraction,
  ConfigError,
  // norms
  MissingConstituent,
  ResolutionWarning,
  // experiments
  InadmissiblePQ,
  WindowTooShort,
  // io / cli
  ParseError,
  UnknownKey,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kspec
