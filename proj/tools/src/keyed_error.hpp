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

#include <optional>
#include <string>

#include "kspec/error.hpp"

namespace kspec::cli {

/// An Error that also names the configuration key it concerns and, when it
/// wraps a library error, that error's code.
class KeyedError : public Error {
 public:
  KeyedError(ErrorCode code, std::string key, const std::string& message,
             std::optional<ErrorCode> cause = std::nullopt)
      : Error(code, key.empty() ? message : key + ": " + message), key_(std::move(key)), cause_(cause) {}

  const std::string& key() const noexcept { return key_; }
  std::optional<ErrorCode> cause() const noexcept { return cause_; }

 private:
  std::string key_;
  std::optional<ErrorCode> cause_;
};

}  // namespace kspec::cli
