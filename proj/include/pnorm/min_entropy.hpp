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

// Multi-start local minimization of the output Renyi entropy over pure inputs.
//
// Each restart runs Riemannian gradient descent on the unit sphere of S:
// Barzilai-Borwein trial steps, a nonmonotone Armijo backtracking line search,
// and retraction by renormalization. The objective is evaluated on the
// normalized output, so it is scale invariant and its Euclidean gradient is
// already tangent to the sphere.

#include <cstdint>
#include <vector>

#include "pnorm/channel.hpp"
#include "pnorm/entropy.hpp"

namespace pnorm {

inline constexpr std::uint64_t kRestartStream = 0x7265737461727473ULL;  // "restarts"

struct OptimizerConfig {
  int max_iterations = 2000;
  double gradient_tolerance = 1e-8;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
  int nonmonotone_window = 10;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// psi -> H_p(Tr_B[W psi psi^dagger W^dagger] / |psi|^2), with its gradient in
/// the convention dH = Re <grad, dpsi>.
class OutputEntropyObjective {
 public:
  OutputEntropyObjective(Isometry w, RenyiOrder p);

  Index dim() const { return w_.dim_s(); }
  const Isometry& isometry() const { return w_; }
  RenyiOrder order() const { return p_; }

  double value(const CVectorXd& psi) const;
  double value_and_gradient(const CVectorXd& psi, CVectorXd& grad) const;

 private:
  double entropy_of(const RVector<double>& eig) const;

  Isometry w_;
  RenyiOrder p_;
};

enum class StopReason { kGradientTolerance, kIterationCap, kStalled };

const char* to_string(StopReason r);

struct LocalMinimum {
  double value = 0.0;
  CVectorXd witness;
  StopReason reason = StopReason::kIterationCap;
  int iterations = 0;
  double gradient_norm = 0.0;
};

LocalMinimum minimize_from(const OutputEntropyObjective& objective, CVectorXd start,
                           const OptimizerConfig& config = {});

/// Best of several restarts. `value` is an upper bound on the true minimum.
struct MinEntropyEstimate {
  double value = 0.0;
  StateVector witness;
  std::vector<double> restart_values;
  int restarts = 0;
  std::vector<bool> converged_flags;
  std::vector<int> iterations;
  std::vector<std::uint64_t> restart_seeds;
};

/// Restart k starts from a Haar-random state drawn with
/// derive_seed(seed, kRestartStream, k), so adding restarts never raises the result.
MinEntropyEstimate min_output_entropy_estimate(const Isometry& w, RenyiOrder p, int restarts,
                                               std::uint64_t seed, const OptimizerConfig& config = {});
MinEntropyEstimate min_output_entropy_estimate(const Channel& ch, RenyiOrder p, int restarts,
                                               std::uint64_t seed, const OptimizerConfig& config = {});

}  // namespace pnorm
