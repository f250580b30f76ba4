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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "kspec/grid.hpp"
#include "kspec/linear_symbol.hpp"
#include "kspec/model.hpp"

namespace kspec {

using SymbolTable = std::vector<ModeCoefficients>;

/// Memoises per-mode symbol tables for a given (kind, h, grid, params). Keys
/// compare by exact bit patterns, so only identical inputs share an entry.
/// Reads take a shared lock; insertion is exclusive.
class SymbolCache {
 public:
  explicit SymbolCache(std::size_t capacity = 64) : capacity_(capacity) {}

  std::shared_ptr<const SymbolTable> get(const Grid& grid, SymbolKind kind, double h, const ModelParams& params);
  std::size_t size() const;
  void clear();

 private:
  struct Key {
    std::vector<std::uint64_t> bits;
    friend bool operator<(const Key& a, const Key& b) { return a.bits < b.bits; }
  };

  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const SymbolTable>> entries_;
};

/// Process-wide cache used by the functions below.
SymbolCache& default_symbol_cache();

SymbolTable build_symbol_table(const Grid& grid, SymbolKind kind, double h, const ModelParams& params);

/// out = F(A) in (or out += F(A) in when accumulate is set), mode by mode.
void apply_symbol(const Grid& grid, const SymbolTable& table, const SpectralState& in, SpectralState& out,
                  bool accumulate = false);

/// S(t) X. The result carries time X.time + t; t = 0 returns X untouched.
SpectralState apply_semigroup(double t, const SpectralState& state, const Grid& grid, const ModelParams& params);

/// (S(t) Phi_0 X, S(t) Phi_inf X), sharing the split of low_high_split.
std::pair<SpectralState, SpectralState> apply_split_semigroup(double t, const SpectralState& state,
                                                              const CutoffProfile& cutoff, const Grid& grid,
                                                              const ModelParams& params);

/// A X, the linear generator applied spectrally.
SpectralState apply_generator(const Grid& grid, const SpectralState& state, const ModelParams& params);

}  // namespace kspec
