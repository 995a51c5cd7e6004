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

#include "pnorm/bounds.hpp"

#include <cmath>

namespace pnorm {

SubspaceParams::SubspaceParams(double p_, std::int64_t dim_a_, std::int64_t dim_b_, double alpha_, double gamma_p_)
    : p(p_), dim_a(dim_a_), dim_b(dim_b_), alpha(alpha_), gamma_p(gamma_p_) {
  if (!(p > 1.0 && p < 2.0)) throw InvalidArgument("subspace params: need 1 < p < 2");
  if (dim_a < 2 || dim_b < dim_a) throw InvalidArgument("subspace params: need 2 <= |A| <= |B|");
  if (!(alpha > 0.0)) throw InvalidArgument("subspace params: alpha must be > 0");
  if (!(gamma_p > 0.0)) throw InvalidArgument("subspace params: Gamma_p must be > 0");
}

SubspaceDimension subspace_dimension(const SubspaceParams& params) {
  const double raw = params.gamma_p * std::pow(double(params.dim_a), 2.0 - params.p) * double(params.dim_b) *
                     std::pow(params.alpha, 2.5) / (params.p - 1.0);
  const double fl = std::floor(raw);
  if (!(fl >= 1.0)) throw InfeasibleParameters("subspace dimension evaluates to 0");
  SubspaceDimension out;
  out.value = std::int64_t(fl);
  out.exceeds_ambient = out.value > params.dim_a * params.dim_b;
  return out;
}

double entanglement_floor(const SubspaceParams& params) {
  return entanglement_floor(double(params.dim_a), params.alpha, params.beta());
}

double entanglement_floor(double dim_a, double alpha, double beta) { return std::log(dim_a) - alpha - beta; }

ProbabilityBound failure_probability_bound(const SubspaceParams& params, std::int64_t dim_s) {
  if (dim_s < 1) throw InvalidArgument("failure_probability_bound: |S| must be >= 1");
  const double a = double(params.dim_a);
  const double b = double(params.dim_b);
  const double log_prefactor = 2.0 * double(dim_s) * (0.5 * (params.p - 1.0) * std::log(a) - std::log(params.alpha));
  const double exponent =
      -(2.0 * a * b - 1.0) * params.alpha * params.alpha / (2.0 * std::pow(a, params.p - 1.0));
  ProbabilityBound out;
  out.log_value = log_prefactor + exponent;
  out.value = out.log_value >= 0.0 ? 1.0 : std::exp(out.log_value);
  return out;
}

double lipschitz_bound(double p, std::int64_t dim_a) {
  if (!(p >= 1.0 + 1e-6)) throw InvalidArgument("lipschitz_bound: need p >= 1 + 1e-6");
  if (dim_a < 1) throw InvalidArgument("lipschitz_bound: |A| must be >= 1");
  return 2.0 * p / (p - 1.0) * std::pow(double(dim_a), 0.5 * (p - 1.0));
}

double entangled_input_entropy_bound(double p, std::int64_t dim_s, std::int64_t dim_a, std::int64_t dim_b) {
  if (!(p > 1.0)) throw InvalidArgument("entangled_input_entropy_bound: need p > 1");
  if (dim_s < 1 || dim_a < 1 || dim_b < 1) throw InvalidArgument("entangled_input_entropy_bound: dims must be >= 1");
  if (dim_s > dim_a * dim_b) throw InvalidArgument("entangled_input_entropy_bound: |S| > |A||B|");
  return p / (p - 1.0) * std::log(double(dim_a * dim_b) / double(dim_s));
}

double single_eigenvalue_entropy_bound(double p, double lambda1) {
  if (!(p > 1.0)) throw InvalidArgument("single_eigenvalue_entropy_bound: need p > 1");
  if (!(lambda1 > 0.0 && lambda1 <= 1.0 + 1e-12)) {
    throw InvalidArgument("single_eigenvalue_entropy_bound: lambda1 must lie in (0, 1]");
  }
  return p / (p - 1.0) * std::log(1.0 / std::min(lambda1, 1.0));
}

double violation_gap_prediction(double p, std::int64_t dim_a) {
  if (!(p > 1.0 && p < 2.0)) throw InvalidArgument("violation_gap_prediction: need 1 < p < 2");
  if (dim_a < 1) throw InvalidArgument("violation_gap_prediction: |A| must be >= 1");
  return (2.0 - p) * std::log(double(dim_a));
}

}  // namespace pnorm
