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

#include "kspec/error.hpp"

namespace kspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ViolatesViscosity: return "ViolatesViscosity";
    case ErrorCode::ViolatesCapillarity: return "ViolatesCapillarity";
    case ErrorCode::ViolatesPressure: return "ViolatesPressure";
    case ErrorCode::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorCode::InvalidPressureLaw: return "InvalidPressureLaw";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::ExponentPRange: return "ExponentPRange";
    case ErrorCode::ExponentQ1BelowDimension: return "ExponentQ1BelowDimension";
    case ErrorCode::ExponentQ2AboveDimension: return "ExponentQ2AboveDimension";
    case ErrorCode::ExponentHolderRelation: return "ExponentHolderRelation";
    case ErrorCode::ExponentScaling: return "ExponentScaling";
    case ErrorCode::ExponentTauRange: return "ExponentTauRange";
    case ErrorCode::ExponentQ1HalfNotNorm: return "ExponentQ1HalfNotNorm";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::OutsideSector: return "OutsideSector";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingConstituent: return "MissingConstituent";
    case ErrorCode::ResolutionWarning: return "ResolutionWarning";
    case ErrorCode::InadmissiblePQ: return "InadmissiblePQ";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace kspec
