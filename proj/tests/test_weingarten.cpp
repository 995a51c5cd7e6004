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

#include "pnorm/weingarten.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "pnorm/channel.hpp"

namespace pnorm {
namespace {

TEST(Permutation, Counts) {
  EXPECT_EQ(all_permutations(1).size(), 1u);
  EXPECT_EQ(all_permutations(2).size(), 2u);
  EXPECT_EQ(all_permutations(3).size(), 6u);
  EXPECT_EQ(all_permutations(4).size(), 24u);
  EXPECT_THROW(Permutation(5), InvalidArgument);
  EXPECT_THROW(Permutation(std::vector<int>{0, 0, 1}), InvalidArgument);
}

TEST(Permutation, CycleTypeCensus) {
  std::map<Partition, int> census;
  for (const Permutation& p : all_permutations(4)) ++census[cycle_type(p)];
  EXPECT_EQ(census.size(), 5u);
  EXPECT_EQ(census[(Partition{1, 1, 1, 1})], 1);
  EXPECT_EQ(census[(Partition{2, 1, 1})], 6);
  EXPECT_EQ(census[(Partition{3, 1})], 8);
  EXPECT_EQ(census[(Partition{2, 2})], 3);
  EXPECT_EQ(census[(Partition{4})], 6);
}

TEST(Permutation, CycleTypesAndLength) {
  const Permutation id(4);
  EXPECT_EQ(cycle_type(id), (Partition{1, 1, 1, 1}));
  EXPECT_EQ(id.length(), 0);
  const Permutation swap(std::vector<int>{1, 0, 2, 3});
  EXPECT_EQ(cycle_type(swap), (Partition{2, 1, 1}));
  EXPECT_EQ(swap.length(), 1);
  const Permutation four(std::vector<int>{1, 2, 3, 0});
  EXPECT_EQ(cycle_type(four), (Partition{4}));
  EXPECT_EQ(four.length(), 3);
  EXPECT_EQ(to_string(cycle_type(swap)), "2+1+1");
}

TEST(Permutation, GroupAxioms) {
  const auto perms = all_permutations(4);
  const Permutation id(4);
  for (const auto& a : perms) {
    EXPECT_EQ(a * id, a);
    EXPECT_EQ(id * a, a);
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_TRUE((a.inverse() * a).is_identity());
    EXPECT_EQ(cycle_type(a), cycle_type(a.inverse()));
    for (const auto& b : perms) {
      const Permutation ab = a * b;
      for (int i = 0; i < 4; ++i) EXPECT_EQ(ab(i), a(b(i)));
      for (const auto& c : perms) ASSERT_EQ((a * b) * c, a * (b * c));
    }
  }
}

TEST(Permutation, SymmetricGroupOnThreeIsClosed) {
  const auto perms = all_permutations(3);
  for (const auto& a : perms) {
    for (const auto& b : perms) {
      EXPECT_NE(std::find(perms.begin(), perms.end(), a * b), perms.end());
    }
  }
}

TEST(Weingarten, OrderOne) {
  for (Index d : {1, 4, 24}) {
    EXPECT_DOUBLE_EQ(weingarten_table(1, d)(Partition{1}), 1.0 / double(d));
  }
}

TEST(Weingarten, OrderTwoClosedForm) {
  const WeingartenTable t4 = weingarten_table(2, 4);
  EXPECT_NEAR(t4(Partition{1, 1}), 1.0 / 15.0, 1e-12 / 15.0);
  EXPECT_NEAR(t4(Partition{2}), -1.0 / 60.0, 1e-12 / 60.0);
  const WeingartenTable t24 = weingarten_table(2, 24);
  EXPECT_NEAR(t24(Partition{1, 1}), 1.0 / 575.0, 1e-12 / 575.0);
  EXPECT_NEAR(t24(Partition{2}), -1.0 / 13800.0, 1e-12 / 13800.0);
}

TEST(Weingarten, ConstantOnClassesViaPermutation) {
  const WeingartenTable t = weingarten_table(4, 8);
  for (const Permutation& p : all_permutations(4)) EXPECT_EQ(t(p), t(cycle_type(p)));
  EXPECT_EQ(t.values().size(), 5u);
}

TEST(Weingarten, Orthogonality) {
  for (int n = 1; n <= 4; ++n) {
    for (Index d : {4, 8, 24, 576}) {
      EXPECT_LT(orthogonality_residual(weingarten_table(n, d)), 1e-10) << "n=" << n << " d=" << d;
    }
  }
}

TEST(Weingarten, IdentityAsymptotics) {
  const double d = 576.0;
  const double wg = weingarten_table(4, 576)(Partition{1, 1, 1, 1});
  EXPECT_LT(std::abs(wg * std::pow(d, 4) - 1.0), 10.0 / (d * d));
}

TEST(Weingarten, SingularGram) {
  EXPECT_THROW(weingarten_table(4, 3), SingularGram);
  EXPECT_THROW(weingarten_table(2, 1), SingularGram);
  EXPECT_THROW(average_purity_exact(RegisterDims(1, 1, 3)), SingularGram);
}

TEST(AveragePurity, LedgerShape) {
  const AveragePurity ap = average_purity_exact(RegisterDims(2, 2, 2));
  ASSERT_EQ(ap.ledger.terms.size(), 576u);
  EXPECT_NEAR(ap.ledger.resum(), ap.total, 1e-15);
  EXPECT_EQ(ap.ledger.dims, RegisterDims(2, 2, 2));
  EXPECT_NEAR(ap.total, 0.46753246753246752, 1e-12);
}

TEST(AveragePurity, TrivialReferenceIsPure) {
  for (const RegisterDims& dims : {RegisterDims(1, 2, 2), RegisterDims(1, 2, 3), RegisterDims(1, 4, 4)}) {
    EXPECT_NEAR(average_purity_exact(dims).total, 1.0, 1e-10);
  }
}

TEST(AveragePurity, AgreesWithMonteCarlo) {
  for (const RegisterDims& dims : {RegisterDims(2, 2, 2), RegisterDims(2, 2, 4), RegisterDims(1, 2, 3)}) {
    const double exact = average_purity_exact(dims).total;
    const MonteCarloEstimate mc = average_purity_monte_carlo(dims, 2000, 5, kDefaultMemoryCap);
    if (mc.standard_error < 1e-12) {
      EXPECT_NEAR(mc.mean, exact, 1e-10);
    } else {
      EXPECT_LE(std::abs(mc.mean - exact), 3.0 * mc.standard_error) << dims.to_string();
    }
  }
}

TEST(AveragePurity, MainGeometryLeadingOrder) {
  const double total = average_purity_exact(RegisterDims(3, 8, 24)).total;
  EXPECT_LE(std::abs(total - 1.0 / 9.0), 10.0 / 576.0);
  EXPECT_GT(total, 1.0 / 9.0);
}

TEST(AveragePurity, DominantTerm) {
  EXPECT_EQ(dominant_term(RegisterDims(1, 4, 4)), 1.0);
  EXPECT_NEAR(dominant_term(RegisterDims(3, 8, 24)), 1.0 / 9.0, 1e-16);
  const RegisterDims dims(3, 8, 24);
  const AveragePurity ap = average_purity_exact(dims);
  const double d = double(dims.total());
  for (const LedgerTerm& t : ap.ledger.terms) {
    if (t.sigma.is_identity() && t.tau.is_identity()) {
      EXPECT_LT(std::abs(t.term_value / dominant_term(dims) - 1.0), 10.0 / (d * d));
    }
  }
}

// Each transposition term behaves as -c |S|^2 |A|^-x |B|^-y; estimate x from a
// doubling of e and y from a doubling of g.
TEST(AveragePurity, TranspositionDiagramOrders) {
  auto transpositions = [](const RegisterDims& dims) {
    std::vector<double> out;
    for (const LedgerTerm& t : average_purity_exact(dims).ledger.terms) {
      if (t.tau.is_identity() && t.sigma.length() == 1) out.push_back(t.term_value);
    }
    return out;
  };
  const RegisterDims base(4, 2, 4);
  const auto t0 = transpositions(base);
  const auto te = transpositions(RegisterDims(8, 2, 4));
  const auto tg = transpositions(RegisterDims(4, 2, 8));
  ASSERT_EQ(t0.size(), 6u);
  std::multiset<std::pair<int, int>> orders;
  for (std::size_t i = 0; i < t0.size(); ++i) {
    EXPECT_LT(t0[i], 0.0);
    const double x = -std::log2(te[i] / t0[i]);
    const double y = 2.0 - std::log2(tg[i] / t0[i]);
    const int xr = int(std::lround(x));
    const int yr = int(std::lround(y));
    EXPECT_LT(std::abs(x - xr), 0.15 * xr);
    EXPECT_LT(std::abs(y - yr), 0.15 * yr);
    orders.insert({xr, yr});
  }
  const std::multiset<std::pair<int, int>> expected = {{4, 2}, {4, 2}, {2, 4}, {2, 4}, {4, 4}, {4, 4}};
  EXPECT_EQ(orders, expected);
}

TEST(AveragePurity, SubleadingTermsAreSmall) {
  const RegisterDims dims(3, 8, 24);
  const AveragePurity ap = average_purity_exact(dims);
  double rest = 0.0;
  for (const LedgerTerm& t : ap.ledger.terms) {
    if (!(t.sigma.is_identity() && t.tau.is_identity())) rest += t.term_value;
  }
  EXPECT_LT(std::abs(rest), 10.0 / 576.0);
}

TEST(MonteCarlo, TrivialReferenceHasZeroError) {
  const MonteCarloEstimate mc = average_purity_monte_carlo(RegisterDims(1, 2, 2), 50, 1, kDefaultMemoryCap);
  EXPECT_NEAR(mc.mean, 1.0, 1e-12);
  EXPECT_LT(mc.standard_error, 1e-12);
  EXPECT_EQ(mc.samples, 50);
}

TEST(MonteCarlo, ErrorShrinksWithSamples) {
  const RegisterDims dims(2, 2, 2);
  const MonteCarloEstimate small = average_purity_monte_carlo(dims, 2000, 8, kDefaultMemoryCap);
  const MonteCarloEstimate large = average_purity_monte_carlo(dims, 4000, 8, kDefaultMemoryCap);
  EXPECT_NEAR(small.standard_error / large.standard_error, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

TEST(MonteCarlo, MemoryCapAndValidation) {
  EXPECT_THROW(average_purity_monte_carlo(RegisterDims(2, 2, 2), 10, 1, 10), ResourceError);
  EXPECT_THROW(average_purity_monte_carlo(RegisterDims(2, 2, 2), 1, 1, kDefaultMemoryCap), InvalidArgument);
}

TEST(Ledger, CsvHasOneLinePerTerm) {
  const AveragePurity ap = average_purity_exact(RegisterDims(2, 2, 2));
  std::ostringstream out;
  write_ledger_csv(ap.ledger, out);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "sigma_index,tau_index,cycle_type,loop_weight,wg_value,term_value");
  ++lines;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 577);
}

}  // namespace
}  // namespace pnorm
