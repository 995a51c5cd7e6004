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

// Entropy functionals on spectra. All values are in nats.

#include "pnorm/tensor.hpp"

namespace pnorm {

/// Order p > 0 of a Renyi entropy; p == 1 selects von Neumann entropy.
class RenyiOrder {
 public:
  explicit RenyiOrder(double p) : p_(p) {
    if (!(p > 0.0)) throw InvalidArgument("Renyi order must be > 0");
  }
  double value() const { return p_; }
  bool is_von_neumann() const { return p_ == 1.0; }

 private:
  double p_;
};

double renyi_entropy(const Spectrum& spec, RenyiOrder p);
double von_neumann_entropy(const Spectrum& spec);
double binary_entropy(double x);

struct GroupingParts {
  double lambda1 = 0.0;
  double binary_part = 0.0;        // h(lambda1)
  double residual_entropy = 0.0;   // H1 of lambda_j / (1 - lambda1), j > 1
  double recombined = 0.0;         // h(lambda1) + (1 - lambda1) * residual_entropy
};

/// Split H1 into the top eigenvalue's binary entropy and the renormalized rest.
GroupingParts grouping_decomposition(const Spectrum& spec);

/// -ln sum_{j>1} (lambda_j / (1 - lambda1))^2, a lower bound on the residual H1.
double residual_h2_lower_bound(const Spectrum& spec);

/// Sum of squares of all but the top eigenvalue.
double residual_purity(const Spectrum& spec);

/// nu_p = exp((1 - p)/p * hmin) for p > 1, and its inverse.
double max_p_norm_from_entropy(double hmin, RenyiOrder p);
double entropy_from_max_p_norm(double nu, RenyiOrder p);

/// Eigenvalues clamped at zero; throws on unnormalized or too-negative input.
RVector<double> checked_probabilities(const Spectrum& spec);

}  // namespace pnorm
