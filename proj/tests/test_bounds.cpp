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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace pnorm {
namespace {

TEST(SubspaceDimension, MainGeometry) {
  const SubspaceDimension s = subspace_dimension(SubspaceParams(1.5, 24, 48, 1.0));
  EXPECT_EQ(s.value, 470);
  EXPECT_FALSE(s.exceeds_ambient);
}

TEST(SubspaceDimension, FlagsAmbientOverflow) {
  const SubspaceDimension s = subspace_dimension(SubspaceParams(1.5, 2, 2, 1.0));
  EXPECT_EQ(s.value, 5);
  EXPECT_TRUE(s.exceeds_ambient);
}

TEST(SubspaceDimension, TinyAlphaIsInfeasible) {
  EXPECT_THROW(subspace_dimension(SubspaceParams(1.5, 24, 48, 1e-3)), InfeasibleParameters);
}

TEST(SubspaceParams, Validation) {
  EXPECT_THROW(SubspaceParams(1.0, 24, 48, 1.0), InvalidArgument);
  EXPECT_THROW(SubspaceParams(2.0, 24, 48, 1.0), InvalidArgument);
  EXPECT_THROW(SubspaceParams(1.5, 1, 48, 1.0), InvalidArgument);
  EXPECT_THROW(SubspaceParams(1.5, 48, 24, 1.0), InvalidArgument);
  EXPECT_THROW(SubspaceParams(1.5, 24, 48, 0.0), InvalidArgument);
  EXPECT_THROW(SubspaceParams(1.5, 24, 48, 1.0, 0.0), InvalidArgument);
  EXPECT_DOUBLE_EQ(SubspaceParams(1.5, 24, 48, 1.0).beta(), 1.0);
}

TEST(SubspaceDimension, MonotoneInParameters) {
  Rng rng(1);
  std::uniform_real_distribution<double> pdist(1.05, 1.95);
  std::uniform_real_distribution<double> adist(0.5, 2.0);
  std::uniform_int_distribution<std::int64_t> ddist(2, 64);
  auto value = [](double p, std::int64_t a, std::int64_t b, double alpha, double gamma) {
    return subspace_dimension(SubspaceParams(p, a, b, alpha, gamma)).value;
  };
  for (int rep = 0; rep < 200; ++rep) {
    const double p = pdist(rng);
    const double alpha = adist(rng);
    const std::int64_t a = ddist(rng);
    const std::int64_t b = a + ddist(rng);
    const double gamma = adist(rng);
    const auto base = value(p, a, b, alpha, gamma);
    EXPECT_LE(base, value(p, a, b, alpha, gamma * 1.3));
    EXPECT_LE(base, value(p, a, b, alpha * 1.3, gamma));
    EXPECT_LE(base, value(p, a, b + 7, alpha, gamma));
    EXPECT_GE(base, value(std::min(p + 0.04, 1.99), a, b, alpha, gamma));
  }
}

TEST(EntanglementFloor, Examples) {
  EXPECT_NEAR(entanglement_floor(SubspaceParams(1.5, 24, 48, 1.0)), 1.17805383034794562, 1e-14);
  EXPECT_NEAR(entanglement_floor(24.0, 1.0, 0.0), std::log(24.0) - 1.0, 1e-15);
  EXPECT_NEAR(entanglement_floor(24.0, std::log(24.0), 0.0), 0.0, 1e-15);
}

TEST(FailureProbability, PrefactorCancels) {
  const double p = 1.5;
  const double alpha = std::pow(24.0, (p - 1.0) / 2.0);
  const ProbabilityBound b = failure_probability_bound(SubspaceParams(p, 24, 48, alpha), 470);
  EXPECT_NEAR(b.log_value, -(2.0 * 24 * 48 - 1) * alpha * alpha / (2.0 * std::pow(24.0, p - 1.0)), 1e-9);
  EXPECT_NEAR(b.value, std::exp(b.log_value), 1e-300);
}

TEST(FailureProbability, MainGeometryIsVacuous) {
  const ProbabilityBound b = failure_probability_bound(SubspaceParams(1.5, 24, 48, 1.0), 470);
  EXPECT_NEAR(b.log_value, 511.7936968971981, 1e-9);
  EXPECT_EQ(b.value, 1.0);
}

TEST(FailureProbability, DecaysForLargeAlpha) {
  double last = 0.0;
  for (double alpha : {5.0, 10.0, 20.0, 40.0}) {
    const ProbabilityBound b = failure_probability_bound(SubspaceParams(1.5, 24, 48, alpha), 10);
    EXPECT_LT(b.log_value, last);
    last = b.log_value;
  }
  EXPECT_EQ(failure_probability_bound(SubspaceParams(1.5, 24, 48, 40.0), 10).value, 0.0);
}

TEST(FailureProbability, LogSpaceMatchesDirect) {
  Rng rng(2);
  std::uniform_real_distribution<double> pdist(1.05, 1.95);
  std::uniform_real_distribution<double> adist(1.0, 3.0);
  std::uniform_int_distribution<std::int64_t> ddist(2, 6);
  std::uniform_int_distribution<std::int64_t> sdist(1, 4);
  for (int rep = 0; rep < 200; ++rep) {
    const double p = pdist(rng);
    const double alpha = adist(rng);
    const std::int64_t a = ddist(rng);
    const std::int64_t b = a + ddist(rng);
    const std::int64_t s = sdist(rng);
    const double direct = std::pow(std::pow(double(a), (p - 1.0) / 2.0) / alpha, 2.0 * double(s)) *
                          std::exp(-(2.0 * double(a * b) - 1.0) * alpha * alpha / (2.0 * std::pow(double(a), p - 1.0)));
    ASSERT_GT(direct, 1e-300);
    const ProbabilityBound bound = failure_probability_bound(SubspaceParams(p, a, b, alpha), s);
    EXPECT_NEAR(std::exp(bound.log_value), direct, 1e-12 * direct);
  }
}

TEST(Lipschitz, Examples) {
  EXPECT_DOUBLE_EQ(lipschitz_bound(2.0, 4), 8.0);
  EXPECT_DOUBLE_EQ(lipschitz_bound(1.5, 1), 6.0);
  EXPECT_TRUE(std::isfinite(lipschitz_bound(1.0 + 1e-6, 24)));
  EXPECT_THROW(lipschitz_bound(1.0 + 1e-7, 24), InvalidArgument);
  EXPECT_THROW(lipschitz_bound(1.0, 24), InvalidArgument);
}

TEST(EntangledInputBound, Examples) {
  EXPECT_EQ(entangled_input_entropy_bound(1.5, 16, 4, 4), 0.0);
  EXPECT_NEAR(entangled_input_entropy_bound(1.5, 192, 24, 24), 3.29583686600432907, 1e-13);
  EXPECT_NEAR(entangled_input_entropy_bound(2.0, 192, 24, 24), 2.19722457733621938, 1e-13);
  EXPECT_THROW(entangled_input_entropy_bound(1.5, 17, 4, 4), InvalidArgument);
  EXPECT_THROW(entangled_input_entropy_bound(1.0, 16, 4, 4), InvalidArgument);
}

TEST(SingleEigenvalueBound, MatchesRatioForm) {
  EXPECT_NEAR(single_eigenvalue_entropy_bound(1.5, 1.0 / 3.0), entangled_input_entropy_bound(1.5, 192, 24, 24), 1e-13);
  EXPECT_EQ(single_eigenvalue_entropy_bound(2.0, 1.0), 0.0);
}

TEST(GapPrediction, Examples) {
  EXPECT_NEAR(violation_gap_prediction(1.5, 24), 1.58902691517397281, 1e-14);
  EXPECT_NEAR(violation_gap_prediction(1.1, 24), 2.86024844731315106, 1e-13);
  EXPECT_NEAR(violation_gap_prediction(2.0 - 1e-9, 24), 0.0, 1e-8);
  EXPECT_THROW(violation_gap_prediction(2.0, 24), InvalidArgument);
  EXPECT_THROW(violation_gap_prediction(1.0, 24), InvalidArgument);
}

}  // namespace
}  // namespace pnorm
