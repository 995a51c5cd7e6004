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

#include "pnorm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pnorm/bounds.hpp"
#include "pnorm/parallel.hpp"

namespace pnorm {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw InvalidArgument("config: seeds must be non-empty");
  if (p_values.empty()) throw InvalidArgument("config: p_values must be non-empty");
  for (double p : p_values) {
    if (!(p >= 1.0)) throw InvalidArgument("config: experiments support p >= 1 only");
  }
  if (restarts < 1) throw InvalidArgument("config: restarts must be >= 1");
  if (mc_samples < 2) throw InvalidArgument("config: mc_samples must be >= 2");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("dims")) {
    const auto d = j.at("dims").get<std::vector<Index>>();
    if (d.size() != 3) throw InvalidArgument("config: dims must have three entries");
    c.dims = RegisterDims(d[0], d[1], d[2]);
  }
  if (j.contains("p_values")) c.p_values = j.at("p_values").get<std::vector<double>>();
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("restarts")) c.restarts = j.at("restarts").get<int>();
  if (j.contains("mc_samples")) c.mc_samples = j.at("mc_samples").get<int>();
  if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  if (j.contains("memory_cap")) c.memory_cap = j.at("memory_cap").get<std::uint64_t>();
  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    c.optimizer.max_iterations = o.value("max_iterations", c.optimizer.max_iterations);
    c.optimizer.gradient_tolerance = o.value("gradient_tolerance", c.optimizer.gradient_tolerance);
    c.optimizer.threads = o.value("threads", c.optimizer.threads);
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  return json{
      {"dims", {c.dims.e, c.dims.f, c.dims.g}},
      {"p_values", c.p_values},
      {"seeds", c.seeds},
      {"restarts", c.restarts},
      {"mc_samples", c.mc_samples},
      {"memory_cap", c.memory_cap},
      {"optimizer",
       {{"max_iterations", c.optimizer.max_iterations}, {"gradient_tolerance", c.optimizer.gradient_tolerance}}},
  };
}

namespace {

json report_header(const std::string& kind, const ExperimentConfig& config) {
  const RegisterDims& d = config.dims;
  return json{
      {"schema_version", kReportSchemaVersion},
      {"report", kind},
      {"units", "nats"},
      {"rng", kRngName},
      {"seed_derivation", kSeedDerivation},
      {"config", to_json(config)},
      {"registers", {{"R", d.r()}, {"S", d.s()}, {"A", d.a()}, {"B", d.b()}}},
  };
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// The Phi-input output of the product channel and its spectrum.
struct ProductOutput {
  DensityOperator rho;
  Spectrum spectrum;
  double phi_fidelity;
};

ProductOutput product_output(const Channel& ch, std::uint64_t memory_cap) {
  DensityOperator rho = apply_product_to_phi(ch, memory_cap);
  Spectrum spec = eigenvalues_hermitian(rho);
  const double fid = expectation(rho, maximally_entangled_state(ch.output_dim()));
  return ProductOutput{std::move(rho), std::move(spec), fid};
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Channel channel_for_seed(const RegisterDims& dims, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kChannelStream, 0));
  return sample_channel(dims, rng);
}

void write_report_file(const ExperimentConfig& config, const std::string& name, const std::string& content) {
  if (config.output_path.empty()) return;
  const std::filesystem::path dir(config.output_path);
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot open report file " + (dir / name).string());
  out << content;
}

// -- violation ---------------------------------------------------------------

json ViolationReport::to_json() const {
  json j = report_header("violation", config);
  j["gap_semantics"] =
      "measured_gap = Hhat_p(N) + Hhat_p(conj N) - H_p((N x conj N)(Phi)). The single-copy values are "
      "upper bounds on the true minima (best local minimum over restarts), so measured_gap can "
      "overstate the Phi-witnessed gap; H_p((N x conj N)(Phi)) itself upper-bounds the product-channel minimum.";
  j["assertion_failures"] = assertion_failures;
  json rows_json = json::array();
  std::vector<std::pair<double, std::vector<double>>> curve;
  for (const auto& r : rows) {
    rows_json.push_back({
        {"seed", r.seed},
        {"p", r.p},
        {"single_copy_estimate", r.single_copy_estimate},
        {"single_copy_estimate_conj", r.single_copy_estimate_conj},
        {"converged_restarts", r.converged_restarts},
        {"converged_restarts_conj", r.converged_restarts_conj},
        {"entangled_output_entropy", r.entangled_output_entropy},
        {"top_eigenvalue", r.top_eigenvalue},
        {"phi_fidelity", r.phi_fidelity},
        {"fidelity_floor", r.fidelity_floor},
        {"bound_eq_renyi", optional_number(r.bound_eq_renyi)},
        {"single_eigenvalue_bound", optional_number(r.single_eigenvalue_bound)},
        {"measured_gap", r.measured_gap},
        {"predicted_gap", optional_number(r.predicted_gap)},
        {"von_neumann_product", r.von_neumann_product},
        {"grouping_parts", {{"binary", r.grouping_binary}, {"residual", r.grouping_residual}}},
        {"status", r.status},
    });
    auto it = std::find_if(curve.begin(), curve.end(), [&](const auto& c) { return c.first == r.p; });
    if (it == curve.end()) it = curve.insert(curve.end(), {r.p, {}});
    it->second.push_back(r.measured_gap);
  }
  j["rows"] = std::move(rows_json);
  json gap_curve = json::array();
  for (const auto& [p, gaps] : curve) {
    double mean = 0.0;
    int positive = 0;
    for (double g : gaps) {
      mean += g;
      positive += g > 0.0;
    }
    mean /= double(gaps.size());
    gap_curve.push_back({{"p", p}, {"mean_measured_gap", mean}, {"positive_gap_seeds", positive},
                         {"seeds", gaps.size()}});
  }
  j["gap_curve"] = std::move(gap_curve);
  return j;
}

ViolationReport run_violation_experiment(const ExperimentConfig& config) {
  config.validate();
  const RegisterDims& dims = config.dims;
  ViolationReport report;
  report.config = config;
  const std::size_t np = config.p_values.size();
  std::vector<std::vector<ViolationRow>> per_seed(config.seeds.size());
  std::vector<std::string> spectra(config.seeds.size());

  OptimizerConfig inner = config.optimizer;
  inner.threads = 1;
  parallel_for(config.seeds.size(), config.optimizer.threads, [&](std::size_t si) {
    const std::uint64_t seed = config.seeds[si];
    const Channel ch = channel_for_seed(dims, seed);
    const Channel ch_conj = conjugate(ch);
    const ProductOutput out = product_output(ch, config.memory_cap);
    const GroupingParts grouping = grouping_decomposition(out.spectrum);
    const double vn = von_neumann_entropy(out.spectrum);
    const double lambda1 = out.spectrum.top();
    const double floor = 1.0 / double(dims.e);

    for (std::size_t pi = 0; pi < np; ++pi) {
      const double p = config.p_values[pi];
      ViolationRow row;
      row.seed = seed;
      row.p = p;
      const auto est = min_output_entropy_estimate(ch, RenyiOrder(p), config.restarts,
                                                   derive_seed(seed, kEstimateStream, 2 * pi), inner);
      const auto est_conj = min_output_entropy_estimate(ch_conj, RenyiOrder(p), config.restarts,
                                                        derive_seed(seed, kEstimateStream, 2 * pi + 1), inner);
      row.single_copy_estimate = est.value;
      row.single_copy_estimate_conj = est_conj.value;
      row.converged_restarts = int(std::count(est.converged_flags.begin(), est.converged_flags.end(), true));
      row.converged_restarts_conj =
          int(std::count(est_conj.converged_flags.begin(), est_conj.converged_flags.end(), true));
      row.entangled_output_entropy = renyi_entropy(out.spectrum, RenyiOrder(p));
      row.top_eigenvalue = lambda1;
      row.phi_fidelity = out.phi_fidelity;
      row.fidelity_floor = floor;
      if (p > 1.0) {
        row.bound_eq_renyi = entangled_input_entropy_bound(p, dims.s(), dims.a(), dims.b());
        row.single_eigenvalue_bound = single_eigenvalue_entropy_bound(p, lambda1);
      }
      if (p > 1.0 && p < 2.0) row.predicted_gap = violation_gap_prediction(p, dims.a());
      row.measured_gap = row.single_copy_estimate + row.single_copy_estimate_conj - row.entangled_output_entropy;
      row.von_neumann_product = vn;
      row.grouping_binary = grouping.binary_part;
      row.grouping_residual = grouping.residual_entropy;

      if (lambda1 < floor - 1e-9 || out.phi_fidelity < floor - 1e-9) {
        row.status = "aborted: top eigenvalue below 1/|E|";
      } else if (row.single_eigenvalue_bound && row.entangled_output_entropy > *row.single_eigenvalue_bound + 1e-9) {
        row.status = "aborted: entropy exceeds single-eigenvalue bound";
      } else if (row.bound_eq_renyi && row.entangled_output_entropy > *row.bound_eq_renyi + 1e-9) {
        row.status = "aborted: entropy exceeds |S|/(|A||B|) bound";
      }
      per_seed[si].push_back(std::move(row));
    }
    SpectrumRun run;
    run.seed = seed;
    run.spectrum = out.spectrum;
    spectra[si] = run.csv();
  });

  for (std::size_t si = 0; si < per_seed.size(); ++si) {
    for (auto& row : per_seed[si]) {
      report.assertion_failures += row.status != "ok";
      report.rows.push_back(std::move(row));
    }
    write_report_file(config, "spectrum_seed" + std::to_string(config.seeds[si]) + ".csv", spectra[si]);
  }
  write_report_file(config, "violation.json", report.to_json().dump(2) + "\n");
  return report;
}

// -- spectrum ----------------------------------------------------------------

std::string SpectrumRun::csv() const {
  std::string out = "rank,eigenvalue\n";
  const Index n = spectrum.size();
  for (Index k = 0; k < n; ++k) {
    out += std::to_string(k + 1) + "," + format_double(spectrum[n - 1 - k]) + "\n";
  }
  return out;
}

json SpectrumRun::sidecar(const RegisterDims& dims) const {
  return json{
      {"schema_version", kReportSchemaVersion},
      {"report", "spectrum"},
      {"units", "nats"},
      {"rng", kRngName},
      {"seed", seed},
      {"dims", {dims.e, dims.f, dims.g}},
      {"order", "ascending"},
      {"reference_lines", {{"top", reference_top}, {"residual", reference_residual}}},
      {"lambda_max", spectrum.top()},
      {"eigenvalue_sum", spectrum.sum()},
      {"residual_purity", residual_purity},
      {"von_neumann_entropy", von_neumann},
  };
}

std::vector<SpectrumRun> run_spectrum_export(const ExperimentConfig& config) {
  config.validate();
  const RegisterDims& dims = config.dims;
  const double ratio = double(dims.s()) / (double(dims.a()) * double(dims.b()));
  std::vector<SpectrumRun> runs(config.seeds.size());
  parallel_for(config.seeds.size(), config.optimizer.threads, [&](std::size_t si) {
    const ProductOutput out = product_output(channel_for_seed(dims, config.seeds[si]), config.memory_cap);
    SpectrumRun& run = runs[si];
    run.seed = config.seeds[si];
    run.spectrum = out.spectrum;
    run.reference_top = ratio;
    run.reference_residual = (1.0 - ratio) / (double(dims.a()) * double(dims.a()));
    run.residual_purity = residual_purity(out.spectrum);
    run.von_neumann = von_neumann_entropy(out.spectrum);
  });
  for (const auto& run : runs) {
    const std::string stem = "spectrum_seed" + std::to_string(run.seed);
    write_report_file(config, stem + ".csv", run.csv());
    write_report_file(config, stem + ".json", run.sidecar(dims).dump(2) + "\n");
  }
  return runs;
}

// -- purity ------------------------------------------------------------------

bool PurityReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const PurityRow& r) { return r.pass; });
}

json PurityReport::to_json() const {
  json j = report_header("purity", config);
  j["criterion"] = "|exact - mc_mean| <= 3 * standard_error";
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({
        {"seed", r.seed},
        {"exact", r.exact},
        {"leading_term", r.leading_term},
        {"mc_mean", r.monte_carlo.mean},
        {"mc_standard_error", r.monte_carlo.standard_error},
        {"mc_samples", r.monte_carlo.samples},
        {"z_score", r.z_score},
        {"pass", r.pass},
    });
  }
  j["rows"] = std::move(rows_json);
  j["all_pass"] = all_pass();
  return j;
}

PurityReport run_purity_validation(const ExperimentConfig& config) {
  config.validate();
  PurityReport report;
  report.config = config;
  const AveragePurity exact = average_purity_exact(config.dims);
  for (std::uint64_t seed : config.seeds) {
    PurityRow row;
    row.seed = seed;
    row.exact = exact.total;
    row.leading_term = dominant_term(config.dims);
    row.monte_carlo =
        average_purity_monte_carlo(config.dims, config.mc_samples, seed, config.memory_cap, config.optimizer.threads);
    const double diff = row.monte_carlo.mean - row.exact;
    // A zero-variance estimator (|R| = 1) must match exactly, up to rounding.
    if (row.monte_carlo.standard_error > 1e-12) {
      row.z_score = diff / row.monte_carlo.standard_error;
      row.pass = std::abs(row.z_score) <= 3.0;
    } else {
      row.z_score = 0.0;
      row.pass = std::abs(diff) <= 1e-10;
    }
    report.rows.push_back(row);
  }
  std::ostringstream ledger_csv;
  write_ledger_csv(exact.ledger, ledger_csv);
  write_report_file(config, "ledger.csv", ledger_csv.str());
  write_report_file(config, "purity.json", report.to_json().dump(2) + "\n");
  return report;
}

// -- von Neumann -------------------------------------------------------------

json VonNeumannReport::to_json() const {
  json j = report_header("von_neumann", config);
  j["assertion_failures"] = assertion_failures;
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({
        {"seed", r.seed},
        {"entropy", r.entropy},
        {"lambda1", r.lambda1},
        {"binary_part", r.binary_part},
        {"residual_entropy", r.residual_entropy},
        {"recombined", r.recombined},
        {"grouping_error", r.grouping_error},
        {"residual_h2_bound", r.residual_h2_bound},
        {"residual_purity", r.residual_purity},
        {"max_entropy", r.max_entropy},
        {"deficit", r.deficit},
        {"status", r.status},
    });
  }
  j["rows"] = std::move(rows_json);
  return j;
}

VonNeumannReport run_von_neumann_analysis(const ExperimentConfig& config) {
  config.validate();
  const RegisterDims& dims = config.dims;
  VonNeumannReport report;
  report.config = config;
  std::vector<VonNeumannRow> rows(config.seeds.size());
  parallel_for(config.seeds.size(), config.optimizer.threads, [&](std::size_t si) {
    const ProductOutput out = product_output(channel_for_seed(dims, config.seeds[si]), config.memory_cap);
    VonNeumannRow& row = rows[si];
    row.seed = config.seeds[si];
    row.entropy = von_neumann_entropy(out.spectrum);
    const GroupingParts parts = grouping_decomposition(out.spectrum);
    row.lambda1 = parts.lambda1;
    row.binary_part = parts.binary_part;
    row.residual_entropy = parts.residual_entropy;
    row.recombined = parts.recombined;
    row.grouping_error = std::abs(parts.recombined - row.entropy);
    // The residual bound does not exist for a pure output.
    row.residual_h2_bound = parts.lambda1 < 1.0 - 1e-12 ? residual_h2_lower_bound(out.spectrum) : 0.0;
    row.residual_purity = residual_purity(out.spectrum);
    row.max_entropy = 2.0 * std::log(double(dims.a()));
    row.deficit = row.max_entropy - row.entropy;
    if (row.grouping_error > 1e-10) row.status = "aborted: grouping identity violated";
  });
  for (auto& row : rows) {
    report.assertion_failures += row.status != "ok";
    report.rows.push_back(std::move(row));
  }
  write_report_file(config, "von_neumann.json", report.to_json().dump(2) + "\n");
  return report;
}

}  // namespace pnorm
