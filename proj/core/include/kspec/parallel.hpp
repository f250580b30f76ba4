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
#include <span>

namespace kspec {

/// Number of OpenMP threads used by the library; 0 restores the runtime
/// default.
void set_thread_count(int threads);
int thread_count();

/// Sum in a fixed order that does not depend on the number of threads:
/// values are cut into blocks of kReduceBlock elements, each block is summed
/// left to right, and block sums are combined by a balanced pairwise tree.
inline constexpr std::size_t kReduceBlock = 2048;

double deterministic_sum(std::span<const double> values);

/// deterministic_sum of f(i) over i in [0, n), without materialising the
/// terms. F must be callable concurrently.
template <class F>
double deterministic_sum_of(std::size_t n, F&& f);

}  // namespace kspec

#include <vector>

namespace kspec {

namespace detail {
double pairwise_combine(std::vector<double>& partials);
}

template <class F>
double deterministic_sum_of(std::size_t n, F&& f) {
  if (n == 0) return 0.0;
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partials(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    partials[static_cast<std::size_t>(b)] = acc;
  }
  return detail::pairwise_combine(partials);
}

}  // namespace kspec
