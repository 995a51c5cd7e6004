// Copyright 2026 The pnorm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for the seeded experiments.
//
//   pnorm-lab violate  --dims 3,8,24 --p 1.5,1.8 --seeds 1,2,3 --restarts 64 --out runs/violate
//   pnorm-lab spectrum --dims 3,8,24 --seeds 1 --out runs/fig
//   pnorm-lab purity   --dims 2,2,2 --mc-samples 2000 --seeds 7
//   pnorm-lab vn       --dims 3,8,24 --seeds 1,2,3
//
// Exit codes: 0 success, 1 usage or input error, 2 a hard check failed,
// 3 resource limit exceeded.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pnorm/experiments.hpp"

namespace {

constexpr int kExitAssertion = 2;
constexpr int kExitResource = 3;

struct Flags {
  std::string config_file;
  std::vector<long> dims;
  std::vector<double> p_values;
  std::vector<std::uint64_t> seeds;
  int restarts = 0;
  int mc_samples = 0;
  std::string out;
  std::uint64_t memory_cap = 0;
  unsigned threads = 0;
};

pnorm::ExperimentConfig build_config(const Flags& flags, const CLI::App& app) {
  pnorm::ExperimentConfig config;
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw pnorm::InvalidArgument("cannot read config file " + flags.config_file);
    config = pnorm::config_from_json(nlohmann::json::parse(in));
  }
  // Flags win over the config file.
  if (app.count("--dims")) {
    if (flags.dims.size() != 3) throw pnorm::InvalidArgument("--dims expects E,F,G");
    config.dims = pnorm::RegisterDims(flags.dims[0], flags.dims[1], flags.dims[2]);
  }
  if (app.count("--p")) config.p_values = flags.p_values;
  if (app.count("--seeds")) config.seeds = flags.seeds;
  if (app.count("--restarts")) config.restarts = flags.restarts;
  if (app.count("--mc-samples")) config.mc_samples = flags.mc_samples;
  if (app.count("--out")) config.output_path = flags.out;
  if (app.count("--memory-cap")) config.memory_cap = flags.memory_cap;
  if (app.count("--threads")) config.optimizer.threads = flags.threads;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar-random channel laboratory: minimum output Renyi entropies and p-norm multiplicativity checks"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config_file, "JSON config file; flags override its fields");
  app.add_option("--dims", flags.dims, "register dims E,F,G")->delimiter(',')->expected(3);
  app.add_option("--p", flags.p_values, "Renyi orders, comma separated")->delimiter(',');
  app.add_option("--seeds", flags.seeds, "experiment seeds, comma separated")->delimiter(',');
  app.add_option("--restarts", flags.restarts, "optimizer restarts per estimate");
  app.add_option("--mc-samples", flags.mc_samples, "Monte Carlo samples for purity validation");
  app.add_option("--out", flags.out, "output directory for reports");
  app.add_option("--memory-cap", flags.memory_cap, "cap on (e*f*g)^2 amplitudes");
  app.add_option("--threads", flags.threads, "worker threads (0 = all cores)");

  auto* violate = app.add_subcommand("violate", "single-copy minima vs the entangled-input product output");
  auto* spectrum = app.add_subcommand("spectrum", "export the spectrum of (N x conj N)(Phi)");
  auto* purity = app.add_subcommand("purity", "exact Haar-average purity vs Monte Carlo");
  auto* vn = app.add_subcommand("vn", "von Neumann entropy analysis of the product output");
  for (auto* sub : {violate, spectrum, purity, vn}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors share exit code 1
  }

  try {
    const pnorm::ExperimentConfig config = build_config(flags, app);
    if (*violate) {
      const auto report = pnorm::run_violation_experiment(config);
      std::cout << report.to_json().dump(2) << "\n";
      return report.assertion_failures == 0 ? 0 : kExitAssertion;
    }
    if (*spectrum) {
      const auto runs = pnorm::run_spectrum_export(config);
      nlohmann::json out = nlohmann::json::array();
      for (const auto& run : runs) out.push_back(run.sidecar(config.dims));
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*purity) {
      const auto report = pnorm::run_purity_validation(config);
      std::cout << report.to_json().dump(2) << "\n";
      return report.all_pass() ? 0 : kExitAssertion;
    }
    if (*vn) {
      const auto report = pnorm::run_von_neumann_analysis(config);
      std::cout << report.to_json().dump(2) << "\n";
      return report.assertion_failures == 0 ? 0 : kExitAssertion;
    }
  } catch (const pnorm::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const pnorm::AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
