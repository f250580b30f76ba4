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

#include <random>

#include <benchmark/benchmark.h>

#include "kspec/experiments.hpp"
#include "kspec/grid.hpp"
#include "kspec/integrator.hpp"
#include "kspec/nonlinear.hpp"
#include "kspec/norms.hpp"
#include "kspec/propagator.hpp"

namespace {

kspec::ModelParams model() {
  kspec::RawModelParams raw;
  raw.mu_star = 1.0;
  raw.nu_star = 0.5;
  raw.kappa_star = 0.6;
  raw.rho_star = 1.0;
  raw.pressure = kspec::PressureLaw::polytropic(0.5, 2.0);
  return kspec::validate_params(raw);
}

kspec::SpectralState data(const kspec::Grid& grid) {
  return kspec::gaussian_data(grid, grid.box_length() / 20.0, 1e-2, 1e-2);
}

void BM_ForwardInverse(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  kspec::RealField f(grid.size());
  for (double& v : f) v = normal(rng);
  for (auto _ : state) {
    auto back = kspec::inverse_field(grid, kspec::forward_field(grid, f));
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_ForwardInverse)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SymbolTable(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, static_cast<int>(state.range(0)));
  const kspec::ModelParams params = model();
  for (auto _ : state) {
    auto table = kspec::build_symbol_table(grid, kspec::SymbolKind::Phi2, 0.05, params);
    benchmark::DoNotOptimize(table.data());
  }
}
BENCHMARK(BM_SymbolTable)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Semigroup(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, static_cast<int>(state.range(0)));
  const kspec::ModelParams params = model();
  const kspec::SpectralState x = data(grid);
  for (auto _ : state) benchmark::DoNotOptimize(kspec::apply_semigroup(0.5, x, grid, params).theta.data());
}
BENCHMARK(BM_Semigroup)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_NonlinearRhs(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, static_cast<int>(state.range(0)));
  const kspec::ModelParams params = model();
  const kspec::SpectralState x = data(grid);
  const auto form = state.range(1) == 0 ? kspec::GForm::Conservative : kspec::GForm::Divided;
  for (auto _ : state) benchmark::DoNotOptimize(kspec::compute_rhs(x, params, grid, form).f_hat.data());
}
BENCHMARK(BM_NonlinearRhs)->Args({16, 0})->Args({32, 0})->Args({32, 1})->Unit(benchmark::kMillisecond);

void BM_DuhamelStep(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, static_cast<int>(state.range(0)));
  const kspec::ModelParams params = model();
  const kspec::SpectralState x = data(grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(kspec::duhamel_step(x, 0.05, params, grid, kspec::Scheme::Etd2rk).theta.data());
}
BENCHMARK(BM_DuhamelStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_DataNorm(benchmark::State& state) {
  const kspec::Grid grid(3, 20.0, 16);
  const kspec::SpectralState x = data(grid);
  const kspec::ExponentSet exps = kspec::validate_exponents(
      kspec::Exponent::ratio(4, 1), kspec::Exponent::ratio(24, 11), kspec::Exponent::ratio(8, 1), 0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kspec::data_norm_I(x, exps, grid));
}
BENCHMARK(BM_DataNorm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
