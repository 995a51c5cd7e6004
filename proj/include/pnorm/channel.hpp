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

// Random Stinespring channels N(rho) = Tr_B[U (|0><0|_R (x) rho) U^dagger]
// from S = FG to A = EF, and their entrywise conjugates.

#include <cstdint>
#include <vector>

#include "pnorm/tensor.hpp"

namespace pnorm {

inline constexpr std::uint64_t kDefaultMemoryCap = std::uint64_t{1} << 22;

/// Columns of the dilation restricted to R = |0>: a (|A||B|) x |S| isometry whose
/// rows are ordered (a, b) row-major, with the output split into A and B.
struct Isometry {
  CMatrixXd matrix;
  Index dim_a = 1;
  Index dim_b = 1;

  Index dim_s() const { return matrix.cols(); }
};

class Channel {
 public:
  Channel(RegisterDims dims, UnitaryMatrix unitary, bool conjugated = false);

  const RegisterDims& dims() const { return dims_; }
  const UnitaryMatrix& unitary() const { return unitary_; }
  bool conjugated() const { return conjugated_; }

  Index input_dim() const { return dims_.s(); }
  Index output_dim() const { return dims_.a(); }
  Index environment_dim() const { return dims_.b(); }

  /// U (or conj(U) for the conjugate channel) restricted to |0>_R (x) S.
  Isometry isometry() const;

 private:
  RegisterDims dims_;
  UnitaryMatrix unitary_;
  bool conjugated_;
};

/// Channel with a Haar-random dilation.
Channel sample_channel(const RegisterDims& dims, Rng& rng);

Channel conjugate(const Channel& ch);

DensityOperator apply(const Channel& ch, const StateVector& input);
DensityOperator apply(const Channel& ch, const DensityOperator& input);

/// Output of an isometry on a (possibly unnormalized) input vector, normalized
/// by the input's squared norm.
CMatrixXd output_state(const Isometry& w, const CVectorXd& psi);

/// K_b = (I_A (x) <b|_B) U (|0>_R (x) I_S), one |A| x |S| matrix per b.
std::vector<CMatrixXd> kraus_operators(const Channel& ch);

/// (N (x) conj N)(Phi^{S1 S2}) on A1 (x) A2, from the global pure state
/// (U (x) conj U)(|0>|0> (x) |Phi>) with B1 B2 traced out.
DensityOperator apply_product_to_phi(const Channel& ch, std::uint64_t memory_cap = kDefaultMemoryCap);

/// Isometry of N1 (x) N2 with rows reordered to (a1 a2, b1 b2).
Isometry product_isometry(const Isometry& first, const Isometry& second);

}  // namespace pnorm
