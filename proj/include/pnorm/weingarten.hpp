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

// Unitary Weingarten calculus for moments of order n <= 4, and the exact Haar
// average of Tr[((N (x) conj N)(Phi))^2].
//
// Moment convention: for U Haar on C^d,
//
//   E[ prod_k U(i_k, j_k) conj(U(i'_k, j'_k)) ]
//     = sum_{sigma, tau} prod_k delta(i_k, i'_{sigma(k)}) delta(j_k, j'_{tau(k)})
//         * Wg(sigma tau^{-1}, d).
//
// Wg depends only on the cycle type of its argument, and sigma tau^{-1} has the
// same cycle type as its inverse, so either orientation gives the same value.

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pnorm/tensor.hpp"

namespace pnorm {

inline constexpr int kMaxPermutationSize = 4;

using Partition = std::vector<int>;  // cycle lengths, descending

std::string to_string(const Partition& partition);

class Permutation {
 public:
  /// Identity on n points.
  explicit Permutation(int n);
  /// images[i] = image of i.
  explicit Permutation(std::vector<int> images);

  int size() const { return n_; }
  int operator()(int i) const { return images_[std::size_t(i)]; }

  /// (this * other)(i) = this(other(i))
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;

  int num_cycles() const;
  /// Minimal number of transpositions: n - #cycles.
  int length() const { return n_ - num_cycles(); }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.n_ == b.n_ && a.images_ == b.images_; }

 private:
  int n_;
  std::array<int, kMaxPermutationSize> images_{};
};

/// All n! permutations in lexicographic order of their image arrays.
std::vector<Permutation> all_permutations(int n);

Partition cycle_type(const Permutation& perm);

class WeingartenTable {
 public:
  WeingartenTable(int n, Index d, std::map<Partition, double> values);

  int n() const { return n_; }
  Index d() const { return d_; }
  const std::map<Partition, double>& values() const { return values_; }

  double operator()(const Partition& cycle_type) const;
  double operator()(const Permutation& perm) const;

 private:
  int n_;
  Index d_;
  std::map<Partition, double> values_;
};

/// Inverts the n! x n! Gram matrix G[sigma, tau] = d^{#cycles(sigma tau^{-1})}.
/// Throws SingularGram for d < n.
WeingartenTable weingarten_table(int n, Index d);

/// Max over sigma of |sum_tau d^{#cycles(sigma tau^{-1})} Wg(tau) - delta(sigma = e)|.
double orthogonality_residual(const WeingartenTable& table);

struct LedgerTerm {
  int sigma_index = 0;  // position in all_permutations(4)
  int tau_index = 0;
  Permutation sigma{4};
  Permutation tau{4};
  std::uint64_t loop_weight = 0;  // product of register dims over free index classes
  Partition wg_argument;          // cycle type of sigma tau^{-1}
  double wg_value = 0.0;
  double term_value = 0.0;        // loop_weight * wg_value / |S|^2
};

struct MomentLedger {
  RegisterDims dims;
  std::vector<LedgerTerm> terms;
  double total = 0.0;

  double resum() const;
};

struct AveragePurity {
  double total = 0.0;
  MomentLedger ledger;
};

/// E_U Tr[((N (x) conj N)(Phi))^2] summed exactly over all (sigma, tau) in S4 x S4.
AveragePurity average_purity_exact(const RegisterDims& dims);

/// |S|^2 / (|A|^2 |B|^2) = 1 / e^2.
double dominant_term(const RegisterDims& dims);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  int samples = 0;
};

/// Mean purity of apply_product_to_phi over independent Haar channels; sample k
/// uses derive_seed(seed, kPuritySampleStream, k).
inline constexpr std::uint64_t kPuritySampleStream = 0x7075726974790000ULL;  // "purity"
MonteCarloEstimate average_purity_monte_carlo(const RegisterDims& dims, int samples, std::uint64_t seed,
                                              std::uint64_t memory_cap, unsigned threads = 0);

/// CSV: sigma_index,tau_index,cycle_type,loop_weight,wg_value,term_value
void write_ledger_csv(const MomentLedger& ledger, std::ostream& out);

}  // namespace pnorm
