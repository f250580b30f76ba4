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

#include <complex>
#include <span>
#include <string>

namespace kspec {

enum class FftDirection { Forward, Backward };

/// Unnormalised complex-to-complex DFT on a cubic lattice of `modes` points
/// per axis in `dim` dimensions, row-major with the last axis fastest.
/// Plans are created once per (dim, modes, direction) and shared; execution
/// is safe from concurrent threads.
void fft(int dim, int modes, FftDirection direction, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out);

/// Version string of the transform backend.
std::string fft_backend_version();

}  // namespace kspec
