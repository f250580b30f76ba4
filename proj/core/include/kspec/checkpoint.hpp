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

#include <string>

#include "kspec/grid.hpp"

namespace kspec {

/// Restart files. An ASCII header line
///   KSPEC1 dim=<N> M=<M> L=<L> t=<time>
/// is followed by little-endian float64 (re, im) pairs for theta_hat and then
/// each u_hat component, every field in the grid's flat (row-major) order.
struct Checkpoint {
  int dim = 0;
  int modes = 0;
  double box_length = 0.0;
  SpectralState state;

  Grid grid() const { return Grid(dim, box_length, modes); }
};

void write_checkpoint(const std::string& path, const Grid& grid, const SpectralState& state);
/// Throws IoError on unreadable files and ParseError on malformed contents.
Checkpoint read_checkpoint(const std::string& path);

}  // namespace kspec
