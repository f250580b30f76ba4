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

#include "kspec/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "kspec/error.hpp"

namespace kspec {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int modes, FftDirection direction) {
    const auto key = std::make_tuple(dim, modes, direction == FftDirection::Forward);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    std::vector<int> shape(static_cast<std::size_t>(dim), modes);
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(modes);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    // FFTW_ESTIMATE keeps planning deterministic; UNALIGNED lets the plan run
    // on std::vector storage through the new-array interface.
    fftw_plan plan = fftw_plan_dft(dim, shape.data(), in, out,
                                   direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw Error(ErrorCode::InvalidGrid, "FFTW could not create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft(int dim, int modes, FftDirection direction, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out) {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(modes);
  if (in.size() != total || out.size() != total) {
    throw Error(ErrorCode::ShapeMismatch, "fft buffer size does not match the lattice");
  }
  fftw_plan plan = cache().get(dim, modes, direction);
  // The plan was made out-of-place; FFTW requires the same for new-array
  // execution, so alias through a scratch copy when in == out.
  if (in.data() == out.data()) {
    std::vector<std::complex<double>> scratch(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(scratch.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

std::string fft_backend_version() { return fftw_version; }

}  // namespace kspec
