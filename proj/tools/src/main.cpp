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

#include <CLI11.hpp>

#include "kspec_cli/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"kspec: spectral experiments for the linearised and perturbed Navier-Stokes-Korteweg system"};
  app.require_subcommand(1);

  kspec::cli::CommandOptions options;
  std::string out_dir, restart;
  std::uint64_t seed = 0;
  int threads = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check model parameters and exponents"},
      {"eigen", "tabulate eigenvalues and their asymptotics"},
      {"decay", "measure semigroup decay rates"},
      {"resolvent", "sweep the resolvent over a sector"},
      {"simulate", "integrate the perturbation equations"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "random seed (overrides seed)");
    sub->add_option("--threads", threads, "OpenMP thread count")->check(CLI::PositiveNumber);
    if (name == "simulate") sub->add_option("--restart", restart, "checkpoint to resume from")->check(CLI::ExistingFile);
  }

  CLI11_PARSE(app, argc, argv);

  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--out")) options.out_dir = out_dir;
  if (chosen->count("--seed")) options.seed = seed;
  if (chosen->count("--threads")) options.threads = threads;
  if (chosen->get_name() == "simulate" && chosen->count("--restart")) options.restart = restart;
  return kspec::cli::run_command(chosen->get_name(), options);
}
