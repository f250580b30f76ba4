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

#include "kspec/parallel.hpp"

#include <omp.h>

namespace kspec {

namespace {
int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_thread_count(int threads) {
  const int base = default_threads();
  omp_set_num_threads(threads > 0 ? threads : base);
}

int thread_count() { return omp_get_max_threads(); }

namespace detail {

double pairwise_combine(std::vector<double>& partials) {
  std::size_t width = partials.size();
  while (width > 1) {
    const std::size_t half = (width + 1) / 2;
    for (std::size_t i = 0; i + half < width; ++i) partials[i] += partials[i + half];
    width = half;
  }
  return partials.empty() ? 0.0 : partials[0];
}

}  // namespace detail

double deterministic_sum(std::span<const double> values) {
  return deterministic_sum_of(values.size(), [&](std::size_t i) { return values[i]; });
}

}  // namespace kspec
