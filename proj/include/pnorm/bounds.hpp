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

// Closed-form evaluators for the random-subspace entanglement bounds and the
// entropy bounds on the entangled-input output of N (x) conj N. Natural logs
// throughout.

#include <cstdint>

#include "pnorm/entropy.hpp"

namespace pnorm {

struct SubspaceParams {
  double p;
  std::int64_t dim_a;
  std::int64_t dim_b;
  double alpha;
  double gamma_p = 1.0;

  SubspaceParams(double p_, std::int64_t dim_a_, std::int64_t dim_b_, double alpha_, double gamma_p_ = 1.0);

  /// 2|A|/|B|
  double beta() const { return 2.0 * double(dim_a) / double(dim_b); }
};

struct SubspaceDimension {
  std::int64_t value = 0;
  bool exceeds_ambient = false;  // value > |A||B|; the caller must cap
};

/// floor(Gamma_p |A|^{2-p} |B| alpha^{2.5} / (p - 1)); throws InfeasibleParameters below 1.
SubspaceDimension subspace_dimension(const SubspaceParams& params);

/// ln|A| - alpha - beta, with beta = 2|A|/|B|.
double entanglement_floor(const SubspaceParams& params);
double entanglement_floor(double dim_a, double alpha, double beta);

struct ProbabilityBound {
  double value = 0.0;      // min(exp(log_value), 1)
  double log_value = 0.0;  // natural log of the raw bound
};

/// (|A|^{(p-1)/2} / alpha)^{2|S|} exp(-(2|A||B| - 1) alpha^2 / (2 |A|^{p-1})), in log space.
ProbabilityBound failure_probability_bound(const SubspaceParams& params, std::int64_t dim_s);

/// 2p/(p-1) |A|^{(p-1)/2}; its square bounds the squared Lipschitz constant.
double lipschitz_bound(double p, std::int64_t dim_a);

/// (p/(p-1)) ln(|A||B| / |S|): upper bound on H_p((N (x) conj N)(Phi)).
double entangled_input_entropy_bound(double p, std::int64_t dim_s, std::int64_t dim_a, std::int64_t dim_b);

/// (p/(p-1)) ln(1/lambda1): H_p of any spectrum whose top eigenvalue is lambda1
/// is at most this.
double single_eigenvalue_entropy_bound(double p, double lambda1);

/// (2 - p) ln|A|, the leading-order additivity gap.
double violation_gap_prediction(double p, std::int64_t dim_a);

}  // namespace pnorm
