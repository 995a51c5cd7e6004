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

#pragma once

// Seeded experiment drivers and their JSON / CSV reports.
//
// Every random draw is keyed by derive_seed(seed, stream, index), so a run is
// reproducible from its config alone and reports contain no timing data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pnorm/channel.hpp"
#include "pnorm/min_entropy.hpp"
#include "pnorm/weingarten.hpp"

namespace pnorm {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::uint64_t kChannelStream = 0x6368616e6e656c00ULL;   // "channel"
inline constexpr std::uint64_t kEstimateStream = 0x657374696d617465ULL;  // "estimate"

struct ExperimentConfig {
  RegisterDims dims{3, 8, 24};
  std::vector<double> p_values{1.5};
  std::vector<std::uint64_t> seeds{1};
  int restarts = 64;
  int mc_samples = 2000;
  std::string output_path;  // directory for reports; empty writes nothing
  std::uint64_t memory_cap = kDefaultMemoryCap;
  OptimizerConfig optimizer;

  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

/// The Haar channel an experiment uses for a given seed.
Channel channel_for_seed(const RegisterDims& dims, std::uint64_t seed);

struct ViolationRow {
  std::uint64_t seed = 0;
  double p = 0.0;
  double single_copy_estimate = 0.0;       // estimate for N
  double single_copy_estimate_conj = 0.0;  // estimate for conj N
  int converged_restarts = 0;
  int converged_restarts_conj = 0;
  double entangled_output_entropy = 0.0;   // H_p((N (x) conj N)(Phi))
  double top_eigenvalue = 0.0;
  double phi_fidelity = 0.0;               // <Phi| output |Phi>
  double fidelity_floor = 0.0;               // 1/e = |S| / (|A||B|)
  std::optional<double> bound_eq_renyi;    // (p/(p-1)) ln(|A||B|/|S|), p > 1
  std::optional<double> single_eigenvalue_bound;  // (p/(p-1)) ln(1/lambda1), p > 1
  double measured_gap = 0.0;
  std::optional<double> predicted_gap;     // (2-p) ln|A|, 1 < p < 2
  double von_neumann_product = 0.0;
  double grouping_binary = 0.0;
  double grouping_residual = 0.0;
  std::string status = "ok";               // "aborted: ..." on a failed hard check
};

struct ViolationReport {
  ExperimentConfig config;
  std::vector<ViolationRow> rows;
  int assertion_failures = 0;

  nlohmann::json to_json() const;
};

struct SpectrumRun {
  std::uint64_t seed = 0;
  Spectrum spectrum;  // descending
  double reference_top = 0.0;       // |S| / (|A||B|)
  double reference_residual = 0.0;  // (1 - |S|/(|A||B|)) / |A|^2
  double residual_purity = 0.0;     // sum_{j>1} lambda_j^2
  double von_neumann = 0.0;

  std::string csv() const;  // rank,eigenvalue in ascending order
  nlohmann::json sidecar(const RegisterDims& dims) const;
};

struct PurityRow {
  std::uint64_t seed = 0;
  double exact = 0.0;
  double leading_term = 0.0;
  MonteCarloEstimate monte_carlo;
  double z_score = 0.0;
  bool pass = false;
};

struct PurityReport {
  ExperimentConfig config;
  std::vector<PurityRow> rows;
  nlohmann::json to_json() const;
  bool all_pass() const;
};

struct VonNeumannRow {
  std::uint64_t seed = 0;
  double entropy = 0.0;  // H1 of the product output
  double lambda1 = 0.0;
  double binary_part = 0.0;
  double residual_entropy = 0.0;
  double recombined = 0.0;
  double grouping_error = 0.0;
  double residual_h2_bound = 0.0;
  double residual_purity = 0.0;
  double max_entropy = 0.0;  // 2 ln|A|
  double deficit = 0.0;      // 2 ln|A| - H1
  std::string status = "ok";
};

struct VonNeumannReport {
  ExperimentConfig config;
  std::vector<VonNeumannRow> rows;
  int assertion_failures = 0;
  nlohmann::json to_json() const;
};

ViolationReport run_violation_experiment(const ExperimentConfig& config);
std::vector<SpectrumRun> run_spectrum_export(const ExperimentConfig& config);
PurityReport run_purity_validation(const ExperimentConfig& config);
VonNeumannReport run_von_neumann_analysis(const ExperimentConfig& config);

/// Writes `content` to output_path/name, creating the directory. No-op when
/// output_path is empty.
void write_report_file(const ExperimentConfig& config, const std::string& name, const std::string& content);

}  // namespace pnorm
