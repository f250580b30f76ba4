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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <Eigen/Core>
#include "json.hpp"

#include "kspec/checkpoint.hpp"
#include "kspec/error.hpp"
#include "kspec/fft.hpp"
#include "kspec/format.hpp"
#include "kspec/linear_symbol.hpp"
#include "kspec/norms.hpp"
#include "kspec/parallel.hpp"
#include "kspec_cli/cli.hpp"
#include "keyed_error.hpp"

#ifndef KSPEC_VERSION
#define KSPEC_VERSION "unknown"
#endif

namespace kspec::cli {
namespace {

namespace fs = std::filesystem;
using Manifest = std::map<std::string, std::string>;

struct Context {
  RunConfig config;
  CommandOptions options;
  fs::path out;
  Manifest manifest;
  bool checks_passed = true;

  void check(const std::string& name, bool ok) {
    manifest["check." + name] = ok ? "pass" : "fail";
    checks_passed = checks_passed && ok;
  }
  void put(const std::string& key, double v) { manifest[key] = format_double(v); }
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return os;
}

std::vector<double> log_space(double from, double to, int count) {
  std::vector<double> out;
  if (count == 1) return {from};
  for (int k = 0; k < count; ++k) out.push_back(from * std::pow(to / from, static_cast<double>(k) / (count - 1)));
  return out;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::RealDistinct: return "real-distinct";
    case Regime::ComplexPair: return "complex-pair";
    case Regime::NearDegenerate: return "near-degenerate";
  }
  return "unknown";
}

// Band-limited noise: white noise per lattice point, truncated to
// max |k_axis| <= kmax, rescaled to the requested peak amplitude.
RealField random_field(const Grid& grid, std::mt19937_64& rng, int kmax, double amplitude) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealField noise(grid.size());
  for (double& v : noise) v = normal(rng);
  SpectralField spec = forward_field(grid, noise);
  const auto mask = dealias_mask(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    bool keep = mask[i] && i != 0;
    for (int d = 0; d < grid.dim(); ++d) keep = keep && std::abs(grid.signed_index(idx[static_cast<std::size_t>(d)])) <= kmax;
    if (!keep) spec[i] = 0.0;
  }
  RealField field = inverse_field(grid, spec);
  double peak = 0.0;
  for (double v : field) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : field) v *= amplitude / peak;
  return field;
}

SpectralState initial_state(const Context& ctx, const Grid& grid, const ExponentSet& exps) {
  const InitialConfig& in = ctx.config.initial;
  SpectralState s;
  if (in.kind == "gaussian") {
    s = gaussian_data(grid, in.width.value_or(grid.box_length() / 20.0), in.theta_amp, in.u_amp);
  } else if (in.kind == "critical") {
    s = scaled(critical_power_law_data(grid, in.q), in.u_amp);
  } else if (in.kind == "random") {
    std::mt19937_64 rng(ctx.config.seed);
    PhysicalState phys;
    phys.theta = random_field(grid, rng, in.max_wavenumber, in.theta_amp);
    for (int k = 0; k < grid.dim(); ++k) phys.u.push_back(random_field(grid, rng, in.max_wavenumber, in.u_amp));
    s = forward(grid, phys);
  } else {
    s = SpectralState::zeros(grid);
  }
  if (in.data_norm) {
    const double current = data_norm_I(s, exps, grid);
    if (current == 0.0 && *in.data_norm > 0.0)
      throw KeyedError(ErrorCode::ValidationError, "initial.data_norm", "cannot rescale zero data");
    if (current > 0.0) s = scaled(s, *in.data_norm / current);
  }
  return s;
}

void command_validate(Context& ctx, const ModelParams& params, const ExponentSet& exps) {
  for (const char* name : {"viscosity", "capillarity", "pressure", "discriminant", "dimension", "p_range",
                           "q1_below_dimension", "q2_above_dimension", "holder_relation", "scaling", "tau_range",
                           "q1_half_norm"})
    ctx.check(name, true);
  std::map<std::string, double> derived = {{"alpha_star", params.alpha_star()},
                                           {"beta_star", params.beta_star()},
                                           {"gamma_star", params.gamma_star()},
                                           {"delta_star", params.delta_star()},
                                           {"pressure_slope", params.pressure_slope()},
                                           {"sound_speed", params.sound_speed()},
                                           {"crossover_radius", crossover_radius(params)},
                                           {"ell1", exps.ell1},
                                           {"ell2", exps.ell2}};
  auto os = open_output(ctx.out / "derived.csv");
  os << "name,value\n";
  for (const auto& [k, v] : derived) {
    os << k << ',' << format_double(v) << '\n';
    ctx.put("derived." + k, v);
  }
  ctx.manifest["high_frequency_character"] = params.delta_star() > 0.0 ? "parabolic" : "dispersive";
}

void command_eigen(Context& ctx, const ModelParams& params) {
  const EigenConfig& e = ctx.config.eigen;
  const int count = std::max(2, static_cast<int>(std::lround(std::log10(e.xi_max / e.xi_min) * e.points_per_decade)) + 1);
  auto os = open_output(ctx.out / "eigen.csv");
  os << "xi,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,regime\n";
  double worst_sum = 0.0, worst_product = 0.0, max_real = -INFINITY;
  for (double xi : log_space(e.xi_min, e.xi_max, count)) {
    const double r2 = xi * xi;
    const EigenPair ep = eigenpair(r2, params);
    os << format_double(xi) << ',' << format_double(ep.lambda_plus.real()) << ','
       << format_double(ep.lambda_plus.imag()) << ',' << format_double(ep.lambda_minus.real()) << ','
       << format_double(ep.lambda_minus.imag()) << ',' << regime_name(ep.regime) << '\n';
    const double sum = -(params.alpha_star() + params.beta_star()) * r2;
    const double prod = params.rho_star() * (params.kappa_star() * r2 + params.gamma_star()) * r2;
    worst_sum = std::max(worst_sum, std::abs(ep.lambda_plus + ep.lambda_minus - sum) / std::abs(sum));
    worst_product = std::max(worst_product, std::abs(ep.lambda_plus * ep.lambda_minus - prod) / std::abs(prod));
    max_real = std::max({max_real, ep.lambda_plus.real(), ep.lambda_minus.real()});
  }
  ctx.put("vieta_sum_max_rel_error", worst_sum);
  ctx.put("vieta_product_max_rel_error", worst_product);
  ctx.put("max_re_lambda", max_real);
  ctx.check("vieta", worst_sum < 1e-10 && worst_product < 1e-10);
  ctx.check("stability", max_real < 0.0);

  const AsymptoticsConfig& a = ctx.config.asymptotics;
  const AsymptoticsTable table =
      asymptotics_experiment(params, a.low_from, a.low_to, a.high_from, a.high_to, a.points_per_decade);
  auto as = open_output(ctx.out / "asymptotics.csv");
  write_asymptotics_csv(as, table);
  ctx.check("asymptotics_low_monotone", table.low_monotone);
  ctx.check("asymptotics_high_monotone", table.high_monotone);
}

void command_decay(Context& ctx, const ModelParams& params) {
  const DecayConfig& d = ctx.config.decay;
  const Grid grid(ctx.config.grid.dim, ctx.config.grid.box_length, ctx.config.grid.modes);
  DecaySpec spec;
  spec.data = d.data == "gaussian" ? DecayData::Gaussian : DecayData::CriticalPowerLaw;
  spec.p = Exponent::parse(d.p).value;
  spec.q = Exponent::parse(d.q).value;
  spec.j = d.j;
  spec.t_min = d.t_min;
  spec.t_max = d.t_max;
  spec.times = log_space(d.t_min, d.t_max, d.samples);
  const DecayReport report = decay_experiment(spec, grid, params);
  auto os = open_output(ctx.out / "decay.csv");
  write_decay_csv(os, report);
  ctx.put("decay.slope", report.fit.slope);
  ctx.put("decay.fit_residual", report.fit.residual);
  ctx.put("decay.predicted_exponent", report.predicted_exponent);
  ctx.put("decay.relative_error", report.relative_error());
  ctx.put("decay.window_min", report.t_min);
  ctx.put("decay.window_max", report.t_max);
  ctx.check("decay_slope_within_15pct", report.relative_error() <= 0.15);

  if (d.high_frequency_epsilon > 0.0) {
    const SpectralState data = gaussian_data(grid, grid.box_length() / 20.0, 1.0, 1.0);
    std::vector<double> times;
    for (int k = 0; k < d.samples; ++k) times.push_back(d.t_max * k / (d.samples - 1));
    const HighFrequencyReport hf = high_frequency_decay(data, d.high_frequency_epsilon, spec.q, times, grid, params);
    auto hs = open_output(ctx.out / "high_frequency.csv");
    hs << "t,norm\n";
    for (std::size_t i = 0; i < hf.times.size(); ++i)
      hs << format_double(hf.times[i]) << ',' << format_double(hf.values[i]) << '\n';
    ctx.put("high_frequency.rate", hf.rate());
    ctx.check("high_frequency_rate_positive", hf.rate() > 0.0);
  }
}

void command_resolvent(Context& ctx, const ModelParams& params) {
  const ResolventConfig& r = ctx.config.resolvent;
  const Grid grid(ctx.config.grid.dim, ctx.config.grid.box_length, ctx.config.grid.modes);
  ResolventConstants k = ResolventConstants::linearised(params);
  if (r.gamma0) k.gamma0 = *r.gamma0;
  if (r.gamma1) k.gamma1 = *r.gamma1;
  if (r.gamma2) k.gamma2 = *r.gamma2;
  ResolventSweepSpec spec;
  spec.epsilon_angle = r.epsilon_angle;
  spec.lambda0 = r.lambda0;
  spec.lambda_max = r.lambda_max;
  spec.angles = r.angles;
  spec.radii_per_decade = r.radii_per_decade;
  spec.q = r.q;
  const SpectralState probe = gaussian_data(grid, grid.box_length() / 20.0, 1.0, 1.0);
  const ResolventReport report = resolvent_sweep(spec, k, params, grid, probe);
  auto os = open_output(ctx.out / "resolvent.csv");
  write_resolvent_csv(os, report);
  ctx.put("resolvent.sup", report.sup);
  ctx.put("resolvent.inf", report.inf);
  ctx.put("resolvent.flatness", report.flatness());
  ctx.manifest["resolvent.samples"] = std::to_string(report.samples.size());
  ctx.check("resolvent_flatness_below_10", report.flatness() < 10.0);
}

void command_simulate(Context& ctx, const ModelParams& params, const ExponentSet& exps) {
  const GridConfig& gc = ctx.config.grid;
  const Grid grid(gc.dim, gc.box_length, gc.modes);
  SpectralState initial;
  if (ctx.options.restart) {
    const Checkpoint cp = read_checkpoint(*ctx.options.restart);
    if (cp.dim != gc.dim || cp.modes != gc.modes || cp.box_length != gc.box_length)
      throw KeyedError(ErrorCode::ValidationError, "grid", "restart checkpoint does not match the configured grid");
    initial = cp.state;
    ctx.manifest["restart"] = *ctx.options.restart;
  } else {
    initial = initial_state(ctx, grid, exps);
  }
  const double data_norm = data_norm_I(initial, exps, grid);
  ctx.put("data_norm_I", data_norm);

  const IntegratorConfig& ic = ctx.config.integrator;
  Trajectory traj;
  if (ic.picard.enabled) {
    PicardResult pr = picard_iterate(initial, ic.t_end, params, exps, grid, ic);
    auto rs = open_output(ctx.out / "picard_residuals.csv");
    rs << "iteration,residual\n";
    for (std::size_t i = 0; i < pr.residuals.size(); ++i)
      rs << i + 1 << ',' << format_double(pr.residuals[i]) << '\n';
    ctx.check("picard_converged", pr.converged);
    traj = std::move(pr.trajectory);
  } else {
    traj = run_simulation(initial, params, exps, grid, ic);
  }

  auto ns = open_output(ctx.out / "norms.csv");
  traj.norms.write_csv(ns);
  auto ms = open_output(ctx.out / "mean_theta.csv");
  ms << "t,mean_theta\n";
  for (std::size_t k = 0; k < traj.mean_theta.size(); ++k)
    ms << format_double(traj.norms.samples()[k].t) << ',' << format_double(traj.mean_theta[k]) << '\n';

  const std::string w10 = sobolev_pair_name(1, 0, exps.q2.value);
  const double sup_w10 = weighted_sup(traj.norms, w10, 0.0);
  ctx.put("sup_W10_q2", sup_w10);
  ctx.manifest["steps"] = std::to_string(traj.norms.samples().size() - 1);
  ctx.put("final_time", traj.norms.samples().back().t);
  ctx.manifest["completed"] = traj.completed ? "true" : "false";
  if (traj.halt_code) {
    ctx.manifest["halt_code"] = std::string(to_string(*traj.halt_code));
    ctx.manifest["halt_message"] = traj.halt_message;
  }
  if (ic.record_script_N) ctx.put("script_N_measured", script_N(traj.norms, exps));
  double drift = 0.0;
  for (double m : traj.mean_theta) drift = std::max(drift, std::abs(m - traj.mean_theta.front()));
  const double elapsed = std::max(traj.norms.samples().back().t - traj.norms.samples().front().t, 1e-300);
  ctx.put("mean_theta_drift_per_time", drift / elapsed);
  ctx.check("range_condition", !traj.halt_code || *traj.halt_code != ErrorCode::RangeViolation);
  ctx.check("finite", !traj.halt_code || *traj.halt_code != ErrorCode::NonFinite);
  if (data_norm > 0.0) {
    ctx.put("bound_ratio", sup_w10 / data_norm);
    ctx.check("small_data_bound", sup_w10 <= 10.0 * data_norm);
  }
  if (ctx.config.output.checkpoint) write_checkpoint((ctx.out / "checkpoint.bin").string(), grid, traj.snapshots.back());
}

bool configuration_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownKey:
    case ErrorCode::ValidationError:
    case ErrorCode::ConfigError:
    case ErrorCode::InadmissiblePQ:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

void report_error(const fs::path* out, const std::string& command, const Error& e) {
  nlohmann::json j;
  j["command"] = command;
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  if (const auto* k = dynamic_cast<const KeyedError*>(&e)) {
    if (!k->key().empty()) j["key"] = k->key();
    if (k->cause()) j["cause"] = std::string(to_string(*k->cause()));
  }
  const std::string text = j.dump();
  std::cerr << text << '\n';
  if (out != nullptr) {
    std::error_code ec;
    if (fs::is_directory(*out, ec)) {
      std::ofstream os(*out / "error.json");
      os << text << '\n';
    }
  }
}

}  // namespace

void write_manifest(const std::string& path, const std::map<std::string, std::string>& entries) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + path);
  for (const auto& [k, v] : entries) {
    std::string flat = v;
    for (char& ch : flat)
      if (ch == '\n') ch = ' ';
    os << k << '=' << flat << '\n';
  }
}

int run_command(const std::string& command, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx;
  ctx.options = options;
  bool have_out = false;
  try {
    if (command != "validate" && command != "eigen" && command != "decay" && command != "resolvent" &&
        command != "simulate")
      throw KeyedError(ErrorCode::ParseError, "", "unknown command '" + command + "'");
    ctx.config = parse_config(options.config_path);
    if (options.out_dir) ctx.config.output.directory = *options.out_dir;
    if (options.seed) ctx.config.seed = *options.seed;
    if (options.threads) {
      if (*options.threads < 1) throw KeyedError(ErrorCode::ValidationError, "--threads", "must be >= 1");
      set_thread_count(*options.threads);
    }
    ctx.out = ctx.config.output.directory;
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + ctx.out.string());
    have_out = true;

    const std::string canonical = emit_canonical(ctx.config);
    ctx.manifest["command"] = command;
    ctx.manifest["config_hash"] = fnv1a_hex(canonical);
    ctx.manifest["seed"] = std::to_string(ctx.config.seed);
    ctx.manifest["threads"] = std::to_string(thread_count());
    ctx.manifest["version.kspec"] = KSPEC_VERSION;
    ctx.manifest["version.fft"] = fft_backend_version();
    ctx.manifest["version.eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                    "." + std::to_string(EIGEN_MINOR_VERSION);
    {
      auto cs = open_output(ctx.out / "config.canonical.json");
      cs << canonical;
    }

    const ModelParams params = checked_params(ctx.config);
    const ExponentSet exps = checked_exponents(ctx.config);
    ctx.put("sound_speed", params.sound_speed());
    ctx.put("wrap_around_time", ctx.config.grid.box_length / params.sound_speed());

    if (command == "validate") command_validate(ctx, params, exps);
    if (command == "eigen") command_eigen(ctx, params);
    if (command == "decay") command_decay(ctx, params);
    if (command == "resolvent") command_resolvent(ctx, params);
    if (command == "simulate") command_simulate(ctx, params, exps);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ctx.put("wall_time_s", wall);
    ctx.manifest["status"] = ctx.checks_passed ? "ok" : "checks_failed";
    write_manifest((ctx.out / "manifest.txt").string(), ctx.manifest);
    return ctx.checks_passed ? 0 : 4;
  } catch (const Error& e) {
    report_error(have_out ? &ctx.out : nullptr, command, e);
    return configuration_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    report_error(have_out ? &ctx.out : nullptr, command, Error(ErrorCode::IoError, e.what()));
    return 3;
  }
}

}  // namespace kspec::cli
