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

#include "pnorm/entropy.hpp"

#include <cmath>

namespace pnorm {

RVector<double> checked_probabilities(const Spectrum& spec) {
  if (spec.size() == 0) throw InvalidArgument("empty spectrum");
  if (std::abs(spec.sum() - 1.0) > tol::kSpectrumNormalization) {
    throw InvalidArgument("spectrum is not normalized");
  }
  RVector<double> q = spec.values();
  for (Index i = 0; i < q.size(); ++i) {
    if (q[i] < -tol::kNegativeEigenvalue) throw InvalidArgument("spectrum has a negative entry");
    if (q[i] < 0.0) q[i] = 0.0;
  }
  return q;
}

namespace {

double shannon(const RVector<double>& q) {
  double h = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0) h -= q[i] * std::log(q[i]);
  }
  return h;
}

double clamp_range(double h, Index n) { return std::clamp(h, 0.0, std::log(double(n))); }

}  // namespace

double renyi_entropy(const Spectrum& spec, RenyiOrder order) {
  const RVector<double> q = checked_probabilities(spec);
  if (order.is_von_neumann()) return clamp_range(shannon(q), q.size());
  const double p = order.value();
  double s = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0) s += std::pow(q[i], p);
  }
  return clamp_range(std::log(s) / (1.0 - p), q.size());
}

double von_neumann_entropy(const Spectrum& spec) { return renyi_entropy(spec, RenyiOrder(1.0)); }

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) throw InvalidArgument("binary_entropy: x outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

GroupingParts grouping_decomposition(const Spectrum& spec) {
  const RVector<double> q = checked_probabilities(spec);
  if (q.size() < 2) throw InvalidArgument("grouping_decomposition: need at least two eigenvalues");
  GroupingParts parts;
  parts.lambda1 = q[0];
  parts.binary_part = binary_entropy(std::min(q[0], 1.0));
  const double rest = 1.0 - q[0];
  if (rest > 0.0) {
    double h = 0.0;
    for (Index i = 1; i < q.size(); ++i) {
      const double t = q[i] / rest;
      if (t > 0.0) h -= t * std::log(t);
    }
    parts.residual_entropy = h;
  }
  parts.recombined = parts.binary_part + rest * parts.residual_entropy;
  return parts;
}

double residual_h2_lower_bound(const Spectrum& spec) {
  const RVector<double> q = checked_probabilities(spec);
  if (q.size() < 2 || std::abs(q[0] - 1.0) <= 1e-12) {
    throw DegenerateSpectrum("residual_h2_lower_bound: top eigenvalue is 1");
  }
  const double rest = 1.0 - q[0];
  return -std::log(q.tail(q.size() - 1).squaredNorm() / (rest * rest));
}

double residual_purity(const Spectrum& spec) { return spec.values().tail(spec.size() - 1).squaredNorm(); }

double max_p_norm_from_entropy(double hmin, RenyiOrder p) {
  if (p.value() <= 1.0) throw InvalidArgument("max p-norm needs p > 1");
  return std::exp((1.0 - p.value()) / p.value() * hmin);
}

double entropy_from_max_p_norm(double nu, RenyiOrder p) {
  if (p.value() <= 1.0) throw InvalidArgument("max p-norm needs p > 1");
  if (!(nu > 0.0)) throw InvalidArgument("p-norm must be positive");
  return p.value() / (1.0 - p.value()) * std::log(nu);
}

}  // namespace pnorm
