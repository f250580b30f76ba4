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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kspec/experiments.hpp"
#include "kspec/integrator.hpp"
#include "kspec/model.hpp"

namespace kspec::cli {

struct GridConfig {
  int dim = 3;
  int modes = 32;
  double box_length = 50.0;
};

struct InitialConfig {
  std::string kind = "gaussian";  // gaussian | critical | random | zero
  std::optional<double> width;    // defaults to L/20
  double theta_amp = 1e-3;
  double u_amp = 1e-3;
  std::optional<double> data_norm;  // rescale so that the data norm I equals this
  double q = 2.0;                   // for kind = critical
  int max_wavenumber = 4;           // for kind = random, lattice units
};

struct EigenConfig {
  double xi_min = 1e-6;
  double xi_max = 1e6;
  int points_per_decade = 10;
};

struct DecayConfig {
  std::string data = "critical";  // critical | gaussian
  std::string p = "2";
  std::string q = "4/3";
  int j = 0;
  double t_min = 1.0;
  double t_max = 40.0;
  int samples = 16;
  double high_frequency_epsilon = 0.1;  // 0 disables the high-frequency fit
};

struct ResolventConfig {
  double epsilon_angle = 0.7853981633974483;
  double lambda0 = 1.0;
  double lambda_max = 1e6;
  int angles = 16;
  int radii_per_decade = 25;
  double q = 2.0;
  std::optional<double> gamma0, gamma1, gamma2;  // default: linearised about rho_*
};

struct AsymptoticsConfig {
  double low_from = -1.0;
  double low_to = -4.0;
  double high_from = 1.0;
  double high_to = 4.0;
  int points_per_decade = 4;
};

struct OutputConfig {
  std::string directory = "kspec_out";
  bool checkpoint = true;
};

struct RunConfig {
  RawModelParams model;
  std::string p, q1, q2;
  double tau = 0.0;
  GridConfig grid;
  IntegratorConfig integrator;
  InitialConfig initial;
  EigenConfig eigen;
  DecayConfig decay;
  ResolventConfig resolvent;
  AsymptoticsConfig asymptotics;
  OutputConfig output;
  std::uint64_t seed = 0;
};

/// Parses JSON text. Throws ParseError, UnknownKey or ValidationError, with the
/// offending key path at the start of the message.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Sorted-key JSON with every field spelled out.
std::string emit_canonical(const RunConfig& config);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Validated model and exponents; errors carry the config key they refer to.
ModelParams checked_params(const RunConfig& config);
ExponentSet checked_exponents(const RunConfig& config);

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> restart;
  std::optional<int> threads;
};

/// Runs one command and returns the process exit status: 0 success, 2 bad
/// configuration, 3 failed computation, 4 a built-in check failed. On failure
/// a JSON error report goes to stderr and, when possible, error.json.
int run_command(const std::string& command, const CommandOptions& options);

/// Flat key=value manifest, one entry per line, keys sorted.
void write_manifest(const std::string& path, const std::map<std::string, std::string>& entries);

}  // namespace kspec::cli
