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

#include "kspec/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "kspec/parallel.hpp"
#include "kspec/propagator.hpp"

namespace kspec {
namespace {

// out += scale * in
void add_scaled(SpectralState& out, double scale, const SpectralState& in) {
  auto axpy = [scale](SpectralField& y, const SpectralField& x) {
    const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += scale * x[static_cast<std::size_t>(i)];
  };
  axpy(out.theta, in.theta);
  for (std::size_t k = 0; k < out.u.size(); ++k) axpy(out.u[k], in.u[k]);
}

SpectralState difference(const SpectralState& a, const SpectralState& b) {
  SpectralState d = a;
  add_scaled(d, -1.0, b);
  return d;
}

std::shared_ptr<const SymbolTable> table(const Grid& grid, SymbolKind kind, double h, const ModelParams& params) {
  return default_symbol_cache().get(grid, kind, h, params);
}

void require_finite(const SpectralState& s) {
  if (!all_finite(s)) throw Error(ErrorCode::NonFinite, "state became non-finite at t = " + std::to_string(s.time));
}

std::vector<double> step_sizes(double dt, double t_end) {
  const double ratio = t_end / dt;
  auto n = static_cast<std::size_t>(std::llround(ratio));
  if (n == 0 || std::abs(static_cast<double>(n) - ratio) > 1e-9 * ratio) n = static_cast<std::size_t>(std::ceil(ratio));
  std::vector<double> h(n, dt);
  if (n * dt > t_end) h.back() = t_end - static_cast<double>(n - 1) * dt;
  return h;
}

void record(Trajectory& traj, const SpectralState& state, const SpectralState& rhs, const ModelParams& params,
            const ExponentSet& exps, const Grid& grid, const IntegratorConfig& config) {
  std::map<std::string, double> values;
  values[sobolev_pair_name(1, 0, exps.q2.value)] = sobolev_pair_norm(grid, state, 1, 0, exps.q2.value);
  values[gradient_pair_name(0, 2.0)] = gradient_pair_norm(grid, state, 0, 2.0);
  if (config.record_script_N) {
    SpectralState derivative = apply_generator(grid, state, params);
    add_scaled(derivative, 1.0, rhs);
    values.merge(script_N_constituents(grid, state, derivative, exps));
  }
  traj.norms.add(state.time, std::move(values));
  traj.mean_theta.push_back(state.theta[0].real() / static_cast<double>(grid.size()));
}

void check_initial_range(const SpectralState& initial, const ModelParams& params, const Grid& grid) {
  const RealField theta = inverse_field(grid, initial.theta);
  const double rho = params.rho_star();
  for (double v : theta) {
    if (!(rho + v > 0.5 * rho && rho + v < 2.0 * rho))
      throw Error(ErrorCode::RangeViolation, "initial density must satisfy rho_*/2 < rho_* + theta0 < 2 rho_*");
  }
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::ConfigError, "integrator.dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::ConfigError, "integrator.t_end must be positive");
  if (dt > t_end) throw Error(ErrorCode::ConfigError, "integrator.dt must not exceed integrator.t_end");
  if (output_stride < 1) throw Error(ErrorCode::ConfigError, "integrator.output_stride must be >= 1");
  if (picard.max_iters < 1) throw Error(ErrorCode::ConfigError, "integrator.picard.max_iters must be >= 1");
  if (!(picard.contraction_tol > 0.0))
    throw Error(ErrorCode::ConfigError, "integrator.picard.contraction_tol must be positive");
}

double spectral_l2(const SpectralState& state) {
  double s = deterministic_sum_of(state.theta.size(), [&](std::size_t i) { return std::norm(state.theta[i]); });
  for (const auto& c : state.u) s += deterministic_sum_of(c.size(), [&](std::size_t i) { return std::norm(c[i]); });
  return std::sqrt(s);
}

SpectralState nonlinearity(const SpectralState& state, const ModelParams& params, const Grid& grid, GForm form,
                           bool linear_only) {
  SpectralState n = SpectralState::zeros(grid);
  n.time = state.time;
  if (linear_only) {
    check_range(inverse_field(grid, state.theta), params);
    return n;
  }
  RhsFields rhs = compute_rhs(state, params, grid, form);
  n.theta = std::move(rhs.f_hat);
  n.u = std::move(rhs.g_hat);
  return n;
}

namespace {

SpectralState step_with_rhs(const SpectralState& state, const SpectralState& rhs, double dt, const ModelParams& params,
                            const Grid& grid, Scheme scheme, GForm form, bool linear_only) {
  SpectralState out;
  apply_symbol(grid, *table(grid, SymbolKind::Exponential, dt, params), state, out);
  out.time = state.time + dt;
  if (!linear_only) {
    apply_symbol(grid, *table(grid, SymbolKind::Phi1, dt, params), rhs, out, true);
    if (scheme == Scheme::Etd2rk) {
      const SpectralState predicted = nonlinearity(out, params, grid, form);
      apply_symbol(grid, *table(grid, SymbolKind::Phi2, dt, params), difference(predicted, rhs), out, true);
    }
  }
  require_finite(out);
  return out;
}

}  // namespace

SpectralState duhamel_step(const SpectralState& state, double dt, const ModelParams& params, const Grid& grid,
                           Scheme scheme, GForm form, bool linear_only) {
  if (!(dt > 0.0)) throw Error(ErrorCode::ConfigError, "time step must be positive");
  check_shape(grid, state);
  if (!is_hermitian(grid, state, 1e-10))
    throw Error(ErrorCode::NotHermitian, "integrator input is not the transform of a real field");
  const SpectralState rhs = nonlinearity(state, params, grid, form, linear_only);
  return step_with_rhs(state, rhs, dt, params, grid, scheme, form, linear_only);
}

Trajectory run_simulation(const SpectralState& initial, const ModelParams& params, const ExponentSet& exps,
                          const Grid& grid, const IntegratorConfig& config) {
  config.validate();
  check_shape(grid, initial);
  if (!is_hermitian(grid, initial, 1e-10))
    throw Error(ErrorCode::NotHermitian, "initial spectrum is not the transform of a real field");
  check_initial_range(initial, params, grid);

  Trajectory traj;
  const std::vector<double> steps = step_sizes(config.dt, config.t_end);
  const double t0 = initial.time;
  SpectralState state = initial;
  traj.snapshots.push_back(state);
  try {
    SpectralState rhs = nonlinearity(state, params, grid, config.form, config.linear_only);
    record(traj, state, rhs, params, exps, grid, config);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      SpectralState next =
          step_with_rhs(state, rhs, steps[k], params, grid, config.scheme, config.form, config.linear_only);
      next.time = k + 1 == steps.size() ? t0 + config.t_end : t0 + static_cast<double>(k + 1) * config.dt;
      rhs = nonlinearity(next, params, grid, config.form, config.linear_only);
      state = std::move(next);
      record(traj, state, rhs, params, exps, grid, config);
      if ((k + 1) % static_cast<std::size_t>(config.output_stride) == 0 || k + 1 == steps.size())
        traj.snapshots.push_back(state);
    }
    traj.completed = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RangeViolation && e.code() != ErrorCode::NonFinite) throw;
    traj.halt_code = e.code();
    traj.halt_message = e.what();
    if (traj.snapshots.back().time != state.time) traj.snapshots.push_back(state);
  }
  return traj;
}

PicardResult picard_iterate(const SpectralState& initial, double horizon, const ModelParams& params,
                            const ExponentSet& exps, const Grid& grid, const IntegratorConfig& config) {
  IntegratorConfig cfg = config;
  cfg.t_end = horizon;
  cfg.validate();
  check_shape(grid, initial);
  check_initial_range(initial, params, grid);

  const std::vector<double> steps = step_sizes(cfg.dt, horizon);
  const double t0 = initial.time;
  auto time_at = [&](std::size_t k) {
    return k == steps.size() ? t0 + horizon : t0 + static_cast<double>(k) * cfg.dt;
  };

  // Linear flow as the first iterate.
  std::vector<SpectralState> path{initial};
  for (std::size_t k = 0; k < steps.size(); ++k) {
    SpectralState next;
    apply_symbol(grid, *table(grid, SymbolKind::Exponential, steps[k], params), path.back(), next);
    next.time = time_at(k + 1);
    path.push_back(std::move(next));
  }

  PicardResult result;
  int rising = 0;
  for (int iter = 0; iter < cfg.picard.max_iters; ++iter) {
    std::vector<SpectralState> forcing;
    for (const auto& x : path) forcing.push_back(nonlinearity(x, params, grid, cfg.form, cfg.linear_only));

    std::vector<SpectralState> fresh{initial};
    double dist = 0.0;
    double scale = spectral_l2(initial);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const double h = steps[k];
      SpectralState next;
      apply_symbol(grid, *table(grid, SymbolKind::Exponential, h, params), fresh.back(), next);
      if (!cfg.linear_only) {
        // int_0^h S(h - s) [N_k + (s/h)(N_{k+1} - N_k)] ds = Phi1 N_k + Phi2 (N_{k+1} - N_k)
        apply_symbol(grid, *table(grid, SymbolKind::Phi1, h, params), forcing[k], next, true);
        apply_symbol(grid, *table(grid, SymbolKind::Phi2, h, params), difference(forcing[k + 1], forcing[k]), next,
                     true);
      }
      next.time = time_at(k + 1);
      require_finite(next);
      dist = std::max(dist, spectral_l2(difference(next, path[k + 1])));
      scale = std::max(scale, spectral_l2(next));
      fresh.push_back(std::move(next));
    }
    const double residual = scale > 0.0 ? dist / scale : dist;
    if (!result.residuals.empty() && residual >= result.residuals.back()) {
      if (++rising >= 3)
        throw Error(ErrorCode::NoContraction, "Picard residual failed to decrease for 3 consecutive iterations");
    } else {
      rising = 0;
    }
    result.residuals.push_back(residual);
    path = std::move(fresh);
    if (residual < cfg.picard.contraction_tol) {
      result.converged = true;
      break;
    }
  }

  Trajectory& traj = result.trajectory;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const SpectralState rhs = nonlinearity(path[k], params, grid, cfg.form, cfg.linear_only);
    record(traj, path[k], rhs, params, exps, grid, cfg);
    if (k % static_cast<std::size_t>(cfg.output_stride) == 0 || k + 1 == path.size()) traj.snapshots.push_back(path[k]);
  }
  traj.completed = result.converged;
  return result;
}

}  // namespace kspec
