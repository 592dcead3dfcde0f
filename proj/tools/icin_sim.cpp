// Copyright 2026 The icin-feedback Authors
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

// Command-line front end: bit allocation for one user and the three sweeps.
//
//   icin-sim allocate --config cfg.json --distance 400
//   icin-sim allocate --rho 22.9 --alphas 0.07,1,1,0.07,0.03,0.03 --nt 8 --btot 35
//   icin-sim sweep-distance --config cfg.json --out dist.csv --threads 8

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "icin/allocator.hpp"
#include "icin/bounds.hpp"
#include "icin/config.hpp"
#include "icin/errors.hpp"
#include "icin/scenario.hpp"
#include "icin/simulator.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct AllocateArgs {
  std::string config_path;
  std::optional<double> distance;
  std::optional<int> btot;
  std::string regime = "auto";
  std::optional<double> rho;
  std::vector<double> alphas;
  double eta_desired = 1.0;
  std::vector<double> etas;
  std::size_t nt = 8;
};

struct SweepArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  unsigned threads = 1;
  bool fixed_codebook = false;
};

int run_allocate(const AllocateArgs& args) {
  icin::LinkParams link;
  int btot = 0;
  if (args.rho) {
    link.rho = *args.rho;
    link.alphas = args.alphas;
    link.eta_desired = args.eta_desired;
    link.eta_interferers = args.etas.empty() ? std::vector<double>(args.alphas.size(), 1.0) : args.etas;
    link.nt = args.nt;
    if (!args.btot) throw icin::ConfigError("--btot is required with --rho");
    btot = *args.btot;
  } else {
    icin::SimConfig config;
    if (!args.config_path.empty()) config = icin::load_config(args.config_path);
    if (args.btot) config.btot = *args.btot;
    config.validate();
    const icin::Scenario scenario = icin::build_hex_scenario(config);
    const double d = args.distance.value_or(config.cell_radius_m);
    link = icin::user_link_params(scenario, d);
    btot = config.btot;
  }
  try {
    link.validate();
  } catch (const icin::DomainError& e) {
    throw icin::ConfigError(e.what());
  }
  icin::Regime regime;
  try {
    regime = icin::parse_regime(args.regime);
  } catch (const icin::DomainError& e) {
    throw icin::ConfigError(e.what());
  }

  const icin::BitAllocation a = icin::allocate(btot, link, regime);
  const icin::BitAllocation eq = icin::equal_bit_allocation(btot, link.n_cells());
  const double objective = icin::approx_loss_user(link, a);

  std::cout << "allocation " << a.to_tuple_string() << "  (btot " << btot << ", regime "
            << icin::to_string(icin::resolve_regime(link, regime)) << ")\n";
  std::cout << "objective  " << objective << "  (equal-bit "
            << icin::approx_loss_user(link, eq) << ")\n";
  nlohmann::json j = {{"btot", btot},
                      {"regime", std::string(icin::to_string(icin::resolve_regime(link, regime)))},
                      {"desired_bits", a.desired_bits},
                      {"interferer_bits", a.interferer_bits},
                      {"approx_loss", objective},
                      {"rho", link.rho},
                      {"alphas", link.alphas},
                      {"eta_desired", link.eta_desired},
                      {"eta_interferers", link.eta_interferers},
                      {"nt", link.nt}};
  std::cout << j.dump() << '\n';
  return 0;
}

int run_sweep_command(icin::SweepKind kind, const SweepArgs& args) {
  icin::SimConfig config;
  if (!args.config_path.empty()) config = icin::load_config(args.config_path);
  if (args.seed) config.master_seed = *args.seed;
  if (args.trials) config.trials = *args.trials;
  if (args.fixed_codebook) config.fixed_codebook = true;
  config.validate();
  const icin::SweepReport report = icin::run_sweep(kind, config, args.threads);
  if (args.out_path.empty() || args.out_path == "-") {
    icin::write_csv(report, std::cout);
  } else {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw icin::ConfigError("cannot open output file " + args.out_path);
    icin::write_csv(report, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback-bit partitioning for cooperative interference nulling"};
  app.require_subcommand(1);

  AllocateArgs alloc;
  auto* allocate_cmd = app.add_subcommand("allocate", "Print the adaptive bit allocation for one user");
  allocate_cmd->add_option("--config", alloc.config_path, "JSON config file");
  allocate_cmd->add_option("--distance", alloc.distance, "User distance from its BS in metres");
  allocate_cmd->add_option("--btot", alloc.btot, "Total feedback bits");
  allocate_cmd->add_option("--regime", alloc.regime, "low_snr, high_snr or auto");
  auto* rho_opt = allocate_cmd->add_option("--rho", alloc.rho, "Desired SNR (linear)");
  allocate_cmd->add_option("--alphas", alloc.alphas, "Interference-to-signal ratios")
      ->delimiter(',')
      ->needs(rho_opt);
  allocate_cmd->add_option("--eta-desired", alloc.eta_desired, "Desired-channel correlation");
  allocate_cmd->add_option("--etas", alloc.etas, "Interfering-channel correlations")->delimiter(',');
  allocate_cmd->add_option("--nt", alloc.nt, "Transmit antennas");

  SweepArgs sweep;
  std::optional<icin::SweepKind> kind;
  for (auto [name, k] : {std::pair{"sweep-distance", icin::SweepKind::kDistance},
                         std::pair{"sweep-bits", icin::SweepKind::kBits},
                         std::pair{"sweep-delay", icin::SweepKind::kDelay}}) {
    auto* cmd = app.add_subcommand(name, std::string("Monte Carlo sweep: ") + (name + 6));
    cmd->add_option("--config", sweep.config_path, "JSON config file");
    cmd->add_option("--out", sweep.out_path, "CSV output path (default stdout)");
    cmd->add_option("--seed", sweep.seed, "Master seed");
    cmd->add_option("--trials", sweep.trials, "Trials per sweep point");
    cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
    cmd->add_flag("--fixed-codebook", sweep.fixed_codebook,
                  "Reuse one codebook per channel and bit count (debugging)");
    cmd->callback([&kind, k = k] { kind = k; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (allocate_cmd->parsed()) return run_allocate(alloc);
    return run_sweep_command(*kind, sweep);
  } catch (const icin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const icin::SingularityError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const icin::CapacityError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const icin::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
