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

#include "pnorm/min_entropy.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "pnorm/parallel.hpp"

namespace pnorm {

namespace {

constexpr double kEigenFloor = 1e-14;

}  // namespace

OutputEntropyObjective::OutputEntropyObjective(Isometry w, RenyiOrder p) : w_(std::move(w)), p_(p) {
  if (p_.value() < 1.0) throw InvalidArgument("min-entropy estimator supports p >= 1 only");
  if (w_.matrix.rows() != w_.dim_a * w_.dim_b) throw InvalidDimension("isometry rows must equal |A||B|");
}

double OutputEntropyObjective::entropy_of(const RVector<double>& eig) const {
  const double p = p_.value();
  if (p_.is_von_neumann()) {
    double h = 0.0;
    for (Index i = 0; i < eig.size(); ++i) {
      if (eig[i] > 0.0) h -= eig[i] * std::log(eig[i]);
    }
    return h;
  }
  double s = 0.0;
  for (Index i = 0; i < eig.size(); ++i) {
    if (eig[i] >= kEigenFloor) s += std::pow(eig[i], p);
  }
  return std::log(s) / (1.0 - p);
}

double OutputEntropyObjective::value(const CVectorXd& psi) const {
  const CMatrixXd rho = output_state(w_, psi);
  Eigen::SelfAdjointEigenSolver<CMatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  return entropy_of(solver.eigenvalues());
}

double OutputEntropyObjective::value_and_gradient(const CVectorXd& psi, CVectorXd& grad) const {
  const double t = psi.squaredNorm();
  const CVectorXd v = w_.matrix * psi;
  // m(b, a) = v[a * B + b]; the output is rho = m^T conj(m) / t.
  const Eigen::Map<const CMatrixXd> m(v.data(), w_.dim_b, w_.dim_a);
  const CMatrixXd rho = (m.transpose() * m.conjugate()) / t;
  Eigen::SelfAdjointEigenSolver<CMatrixXd> solver(rho);
  const RVector<double>& eig = solver.eigenvalues();

  // dH/dlambda_j for the clamped spectral function.
  const double p = p_.value();
  RVector<double> deriv(eig.size());
  if (p_.is_von_neumann()) {
    for (Index i = 0; i < eig.size(); ++i) deriv[i] = -(std::log(std::max(eig[i], kEigenFloor)) + 1.0);
  } else {
    double s = 0.0;
    for (Index i = 0; i < eig.size(); ++i) {
      if (eig[i] >= kEigenFloor) s += std::pow(eig[i], p);
    }
    const double scale = p / ((1.0 - p) * s);
    for (Index i = 0; i < eig.size(); ++i) {
      deriv[i] = eig[i] >= kEigenFloor ? scale * std::pow(eig[i], p - 1.0) : 0.0;
    }
  }
  const double value = entropy_of(eig);

  const CMatrixXd& vecs = solver.eigenvectors();
  const CMatrixXd g = vecs * deriv.asDiagonal() * vecs.adjoint();
  double c = 0.0;
  for (Index i = 0; i < eig.size(); ++i) c += eig[i] * deriv[i];

  // u[a * B + b] = (G Y)(a, b) with Y(a, b) = m(b, a), i.e. u = vec(m G^T).
  const CMatrixXd z = m * g.transpose();
  const Eigen::Map<const CVectorXd> u(z.data(), z.size());
  grad = (2.0 / t) * (w_.matrix.adjoint() * u - c * psi);
  return value;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::kGradientTolerance:
      return "gradient_tolerance";
    case StopReason::kIterationCap:
      return "iteration_cap";
    case StopReason::kStalled:
      return "stalled";
  }
  return "unknown";
}

LocalMinimum minimize_from(const OutputEntropyObjective& objective, CVectorXd start,
                           const OptimizerConfig& config) {
  const double start_norm = start.norm();
  if (!(start_norm > 0.0)) throw InvalidArgument("minimize_from: zero start vector");
  CVectorXd psi = start / start_norm;
  CVectorXd grad;
  double f = objective.value_and_gradient(psi, grad);

  std::deque<double> history{f};
  CVectorXd prev_psi;
  CVectorXd prev_grad;
  double step = 0.0;

  LocalMinimum out;
  out.reason = StopReason::kIterationCap;
  int it = 0;
  for (; it < config.max_iterations; ++it) {
    const double gnorm2 = grad.squaredNorm();
    if (std::sqrt(gnorm2) < config.gradient_tolerance) {
      out.reason = StopReason::kGradientTolerance;
      break;
    }
    if (it == 0) {
      step = 0.1 / std::sqrt(gnorm2);
    } else {
      const CVectorXd s = psi - prev_psi;
      const CVectorXd y = grad - prev_grad;
      const double sy = s.dot(y).real();
      if (sy > 0.0) step = s.squaredNorm() / sy;
    }
    step = std::clamp(step, 1e-12, 1e12);

    const double f_ref = *std::max_element(history.begin(), history.end());
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f_ref));
    bool accepted = false;
    CVectorXd trial;
    CVectorXd trial_grad;
    double f_trial = 0.0;
    for (int k = 0; k < config.max_backtracks; ++k) {
      trial = psi - step * grad;
      trial.normalize();
      f_trial = objective.value_and_gradient(trial, trial_grad);
      if (f_trial <= f_ref - config.armijo * step * gnorm2 + slack) {
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) {
      out.reason = StopReason::kStalled;
      break;
    }
    prev_psi = std::move(psi);
    prev_grad = std::move(grad);
    psi = std::move(trial);
    grad = std::move(trial_grad);
    f = f_trial;
    history.push_back(f);
    if (int(history.size()) > config.nonmonotone_window) history.pop_front();
  }
  out.value = f;
  out.witness = std::move(psi);
  out.iterations = it;
  out.gradient_norm = grad.norm();
  return out;
}

MinEntropyEstimate min_output_entropy_estimate(const Isometry& w, RenyiOrder p, int restarts, std::uint64_t seed,
                                               const OptimizerConfig& config) {
  if (restarts < 1) throw InvalidArgument("min_output_entropy_estimate: restarts must be >= 1");
  const OutputEntropyObjective objective(w, p);
  std::vector<LocalMinimum> results(static_cast<std::size_t>(restarts));
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(restarts));
  parallel_for(std::size_t(restarts), config.threads, [&](std::size_t k) {
    seeds[k] = derive_seed(seed, kRestartStream, k);
    Rng rng(seeds[k]);
    CVectorXd start = complex_gaussian(objective.dim(), 1, rng).col(0);
    results[k] = minimize_from(objective, std::move(start), config);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].value < results[best].value) best = k;
  }
  MinEntropyEstimate est{.value = results[best].value,
                         .witness = StateVector::normalized(results[best].witness, Dims{objective.dim()}),
                         .restart_values = {},
                         .restarts = restarts,
                         .converged_flags = {},
                         .iterations = {},
                         .restart_seeds = std::move(seeds)};
  for (const auto& r : results) {
    est.restart_values.push_back(r.value);
    est.converged_flags.push_back(r.reason == StopReason::kGradientTolerance);
    est.iterations.push_back(r.iterations);
  }
  return est;
}

MinEntropyEstimate min_output_entropy_estimate(const Channel& ch, RenyiOrder p, int restarts, std::uint64_t seed,
                                               const OptimizerConfig& config) {
  return min_output_entropy_estimate(ch.isometry(), p, restarts, seed, config);
}

}  // namespace pnorm
