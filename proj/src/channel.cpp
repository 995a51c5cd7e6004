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

#include "pnorm/channel.hpp"

#include <string>
#include <utility>

namespace pnorm {

Channel::Channel(RegisterDims dims, UnitaryMatrix unitary, bool conjugated)
    : dims_(dims), unitary_(std::move(unitary)), conjugated_(conjugated) {
  if (unitary_.size() != dims_.total()) {
    throw InvalidDimension("channel unitary side must equal e*f*g");
  }
}

Isometry Channel::isometry() const {
  // With E leading, the inputs |0>_E |s> are the first |S| columns.
  Isometry w;
  w.dim_a = dims_.a();
  w.dim_b = dims_.b();
  w.matrix = unitary_.matrix().leftCols(dims_.s());
  if (conjugated_) w.matrix = w.matrix.conjugate().eval();
  return w;
}

Channel sample_channel(const RegisterDims& dims, Rng& rng) {
  return Channel(dims, sample_haar_unitary(dims.total(), rng));
}

Channel conjugate(const Channel& ch) { return Channel(ch.dims(), ch.unitary(), !ch.conjugated()); }

CMatrixXd output_state(const Isometry& w, const CVectorXd& psi) {
  const CVectorXd v = w.matrix * psi;
  // v[a * B + b] viewed column-major as a B x A matrix m(b, a).
  const Eigen::Map<const CMatrixXd> m(v.data(), w.dim_b, w.dim_a);
  CMatrixXd rho = m.transpose() * m.conjugate();
  rho /= psi.squaredNorm();
  return rho;
}

DensityOperator apply(const Channel& ch, const StateVector& input) {
  if (input.size() != ch.input_dim()) throw InvalidDimension("apply: input dimension must equal |S|");
  return DensityOperator(output_state(ch.isometry(), input.amplitudes()), Dims{ch.output_dim()});
}

DensityOperator apply(const Channel& ch, const DensityOperator& input) {
  if (input.size() != ch.input_dim()) throw InvalidDimension("apply: input dimension must equal |S|");
  const Isometry w = ch.isometry();
  const CMatrixXd big = w.matrix * input.matrix() * w.matrix.adjoint();
  return partial_trace(DensityOperator(big, Dims{w.dim_a, w.dim_b}), {0});
}

std::vector<CMatrixXd> kraus_operators(const Channel& ch) {
  const Isometry w = ch.isometry();
  std::vector<CMatrixXd> ks;
  ks.reserve(std::size_t(w.dim_b));
  for (Index b = 0; b < w.dim_b; ++b) {
    CMatrixXd k(w.dim_a, w.dim_s());
    for (Index a = 0; a < w.dim_a; ++a) k.row(a) = w.matrix.row(a * w.dim_b + b);
    ks.push_back(std::move(k));
  }
  return ks;
}

DensityOperator apply_product_to_phi(const Channel& ch, std::uint64_t memory_cap) {
  const RegisterDims& dims = ch.dims();
  const auto side = std::uint64_t(dims.total());
  if (side * side > memory_cap) {
    throw ResourceError("apply_product_to_phi: (e*f*g)^2 = " + std::to_string(side * side) +
                        " exceeds memory cap " + std::to_string(memory_cap));
  }
  const Isometry w = ch.isometry();
  const Index na = w.dim_a;
  const Index nb = w.dim_b;
  // (W (x) conj W) sum_s |s>|s> / sqrt|S| reshaped to a matrix is W W^dagger / sqrt|S|.
  const CMatrixXd psi = (w.matrix * w.matrix.adjoint()) / std::sqrt(double(w.dim_s()));

  // x((a1, a2), (b1, b2)) = psi((a1, b1), (a2, b2))
  CMatrixXd x(na * na, nb * nb);
  for (Index a1 = 0; a1 < na; ++a1) {
    for (Index b1 = 0; b1 < nb; ++b1) {
      const Index row = a1 * nb + b1;
      for (Index a2 = 0; a2 < na; ++a2) {
        for (Index b2 = 0; b2 < nb; ++b2) {
          x(a1 * na + a2, b1 * nb + b2) = psi(row, a2 * nb + b2);
        }
      }
    }
  }
  CMatrixXd rho = x * x.adjoint();
  return DensityOperator(std::move(rho), Dims{na, na});
}

Isometry product_isometry(const Isometry& first, const Isometry& second) {
  const CMatrixXd joint = kron(first.matrix, second.matrix);  // rows (a1 b1 a2 b2)
  Isometry out;
  out.dim_a = first.dim_a * second.dim_a;
  out.dim_b = first.dim_b * second.dim_b;
  out.matrix.resize(joint.rows(), joint.cols());
  for (Index a1 = 0; a1 < first.dim_a; ++a1) {
    for (Index b1 = 0; b1 < first.dim_b; ++b1) {
      for (Index a2 = 0; a2 < second.dim_a; ++a2) {
        for (Index b2 = 0; b2 < second.dim_b; ++b2) {
          const Index src = ((a1 * first.dim_b + b1) * second.dim_a + a2) * second.dim_b + b2;
          const Index dst = (a1 * second.dim_a + a2) * out.dim_b + (b1 * second.dim_b + b2);
          out.matrix.row(dst) = joint.row(src);
        }
      }
    }
  }
  return out;
}

}  // namespace pnorm
