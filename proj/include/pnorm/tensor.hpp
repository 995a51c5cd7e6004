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

// Dense complex linear algebra over composite registers.
//
// Composite indices are row-major: for registers with dims (d0, d1, ..., dn)
// the flat index of (i0, i1, ..., in) is ((i0 * d1 + i1) * d2 + ...) + in.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnorm/errors.hpp"

namespace pnorm {

using Index = Eigen::Index;
using Dims = std::vector<Index>;
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64+std::normal_distribution";
inline constexpr const char* kSeedDerivation = "splitmix64(base ^ splitmix64(stream)) ^ index";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for task `index` of a named stream. Distinct (base, stream) pairs are
/// hashed apart so that XOR-ing the task index cannot alias neighbouring bases.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(stream)) ^ index;
}

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CVectorXd = CVector<double>;
using CMatrixXd = CMatrix<double>;

/// Dimensions of the three elementary registers E, F, G and the derived
/// groupings R = E, S = FG, A = EF, B = G.
struct RegisterDims {
  Index e = 1;
  Index f = 1;
  Index g = 1;

  RegisterDims() = default;
  RegisterDims(Index e_, Index f_, Index g_) : e(e_), f(f_), g(g_) {
    if (e < 1 || f < 1 || g < 1) {
      throw InvalidDimension("register dimensions must be >= 1");
    }
  }

  Index r() const { return e; }
  Index s() const { return f * g; }
  Index a() const { return e * f; }
  Index b() const { return g; }
  Index total() const { return e * f * g; }

  std::string to_string() const {
    return std::to_string(e) + "," + std::to_string(f) + "," + std::to_string(g);
  }

  friend bool operator==(const RegisterDims&, const RegisterDims&) = default;
};

inline Index product(std::span<const Index> dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

inline Index flatten(std::span<const Index> multi, std::span<const Index> dims) {
  if (multi.size() != dims.size()) throw InvalidArgument("flatten: rank mismatch");
  Index k = 0;
  for (std::size_t r = 0; r < dims.size(); ++r) {
    if (multi[r] < 0 || multi[r] >= dims[r]) throw InvalidArgument("flatten: index out of range");
    k = k * dims[r] + multi[r];
  }
  return k;
}

inline std::vector<Index> unflatten(Index k, std::span<const Index> dims) {
  if (k < 0 || k >= product(dims)) throw InvalidArgument("unflatten: index out of range");
  std::vector<Index> multi(dims.size());
  for (std::size_t r = dims.size(); r-- > 0;) {
    multi[r] = k % dims[r];
    k /= dims[r];
  }
  return multi;
}

template <typename Real>
class BasicDensityOperator;

/// Normalized pure state on a composite register.
template <typename Real>
class BasicStateVector {
 public:
  BasicStateVector(CVector<Real> amplitudes, Dims dims)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    check_dims(dims_);
    if (amplitudes_.size() != product(dims_)) {
      throw InvalidDimension("state vector length does not match register dims");
    }
    if (std::abs(amplitudes_.squaredNorm() - Real(1)) > Real(tol::kStateNorm)) {
      throw InvalidArgument("state vector is not normalized");
    }
  }

  /// Rescales to unit norm before validating.
  static BasicStateVector normalized(CVector<Real> amplitudes, Dims dims) {
    const Real n = amplitudes.norm();
    if (!(n > Real(0))) throw InvalidArgument("cannot normalize the zero vector");
    amplitudes /= n;
    return BasicStateVector(std::move(amplitudes), std::move(dims));
  }

  const CVector<Real>& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  Index size() const { return amplitudes_.size(); }

  BasicDensityOperator<Real> projector() const;

 private:
  static void check_dims(const Dims& dims) {
    if (dims.empty()) throw InvalidDimension("state needs at least one register");
    for (Index d : dims) {
      if (d < 1) throw InvalidDimension("register dimension must be >= 1");
    }
  }

  CVector<Real> amplitudes_;
  Dims dims_;
};

/// Hermitian, unit-trace operator on a composite register. The stored matrix is
/// symmetrized after validation. Positivity is checked when the spectrum is
/// taken (see eigenvalues_hermitian).
template <typename Real>
class BasicDensityOperator {
 public:
  BasicDensityOperator(CMatrix<Real> matrix, Dims dims) : dims_(std::move(dims)) {
    if (matrix.rows() != matrix.cols()) throw InvalidArgument("density operator must be square");
    if (dims_.empty() || matrix.rows() != product(dims_)) {
      throw InvalidDimension("density operator side does not match register dims");
    }
    const Real herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > Real(tol::kHermiticity)) throw InvalidArgument("density operator is not Hermitian");
    const Real tr = matrix.trace().real();
    if (std::abs(tr - Real(1)) > Real(tol::kTrace)) {
      throw InvalidArgument("density operator trace is not 1");
    }
    matrix_ = (matrix + matrix.adjoint()) * Real(0.5);
  }

  const CMatrix<Real>& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  Index size() const { return matrix_.rows(); }

  Real purity() const { return matrix_.cwiseAbs2().sum(); }

 private:
  CMatrix<Real> matrix_;
  Dims dims_;
};

template <typename Real>
BasicDensityOperator<Real> BasicStateVector<Real>::projector() const {
  return BasicDensityOperator<Real>(amplitudes_ * amplitudes_.adjoint(), dims_);
}

template <typename Real>
class BasicUnitaryMatrix {
 public:
  explicit BasicUnitaryMatrix(CMatrix<Real> matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
      throw InvalidDimension("unitary must be square and non-empty");
    }
    const Index d = matrix_.rows();
    const Real dev = (matrix_.adjoint() * matrix_ - CMatrix<Real>::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > Real(tol::kUnitarity)) throw InvalidArgument("matrix is not unitary");
  }

  const CMatrix<Real>& matrix() const { return matrix_; }
  Index size() const { return matrix_.rows(); }

 private:
  CMatrix<Real> matrix_;
};

/// Real eigenvalues sorted in descending order.
template <typename Real>
class BasicSpectrum {
 public:
  BasicSpectrum() = default;
  explicit BasicSpectrum(RVector<Real> values) : values_(std::move(values)) {
    std::sort(values_.data(), values_.data() + values_.size(), std::greater<Real>());
  }
  BasicSpectrum(std::initializer_list<Real> values)
      : BasicSpectrum(RVector<Real>(Eigen::Map<const RVector<Real>>(values.begin(), Index(values.size())))) {}

  const RVector<Real>& values() const { return values_; }
  Index size() const { return values_.size(); }
  Real operator[](Index i) const { return values_[i]; }
  Real top() const { return values_[0]; }
  Real sum() const { return values_.sum(); }

 private:
  RVector<Real> values_;
};

using StateVector = BasicStateVector<double>;
using DensityOperator = BasicDensityOperator<double>;
using UnitaryMatrix = BasicUnitaryMatrix<double>;
using Spectrum = BasicSpectrum<double>;

/// Standard complex Gaussian matrix (independent real and imaginary parts).
template <typename Real = double>
CMatrix<Real> complex_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CMatrix<Real> z(rows, cols);
  // Fill in a fixed order so results depend only on the seed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      z(i, j) = std::complex<Real>(re, im);
    }
  }
  return z;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q. Without the phase fix the result is not Haar.
template <typename Real = double>
BasicUnitaryMatrix<Real> sample_haar_unitary(Index d, Rng& rng) {
  if (d < 1) throw InvalidDimension("sample_haar_unitary: d must be >= 1");
  const CMatrix<Real> z = complex_gaussian<Real>(d, d, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const std::complex<Real> rjj = r(j, j);
    const Real mag = std::abs(rjj);
    if (mag > Real(0)) q.col(j) *= rjj / mag;
  }
  return BasicUnitaryMatrix<Real>(std::move(q));
}

/// Uniformly random pure state on the given registers.
template <typename Real = double>
BasicStateVector<Real> sample_haar_state(Dims dims, Rng& rng) {
  const Index n = product(dims);
  return BasicStateVector<Real>::normalized(complex_gaussian<Real>(n, 1, rng).col(0), std::move(dims));
}

template <typename Real = double>
BasicStateVector<Real> basis_state(Index k, Dims dims) {
  CVector<Real> v = CVector<Real>::Zero(product(dims));
  if (k < 0 || k >= v.size()) throw InvalidArgument("basis_state: index out of range");
  v[k] = Real(1);
  return BasicStateVector<Real>(std::move(v), std::move(dims));
}

/// d^{-1/2} sum_i |i>|i> in the computational basis.
template <typename Real = double>
BasicStateVector<Real> maximally_entangled_state(Index d) {
  if (d < 1) throw InvalidDimension("maximally_entangled_state: d must be >= 1");
  CVector<Real> v = CVector<Real>::Zero(d * d);
  const Real amp = Real(1) / std::sqrt(Real(d));
  for (Index i = 0; i < d; ++i) v[i * d + i] = amp;
  return BasicStateVector<Real>(std::move(v), Dims{d, d});
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
BasicStateVector<Real> tensor_product(const BasicStateVector<Real>& x, const BasicStateVector<Real>& y) {
  Dims dims = x.dims();
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  CVector<Real> v = kron(x.amplitudes(), y.amplitudes());
  return BasicStateVector<Real>::normalized(std::move(v), std::move(dims));
}

template <typename Real>
BasicDensityOperator<Real> tensor_product(const BasicDensityOperator<Real>& x, const BasicDensityOperator<Real>& y) {
  Dims dims = x.dims();
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  return BasicDensityOperator<Real>(kron(x.matrix(), y.matrix()), std::move(dims));
}

namespace detail {

/// Split every flat index into (kept flat index, traced flat index).
struct TraceSplit {
  Dims kept_dims;
  Index kept_size = 1;
  Index traced_size = 1;
  std::vector<Index> kept;    // per flat index
  std::vector<Index> traced;  // per flat index
};

inline TraceSplit split_registers(const Dims& dims, std::vector<int> keep) {
  if (keep.empty()) throw InvalidArgument("partial trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.front() < 0 || keep.back() >= int(dims.size())) {
    throw InvalidArgument("partial trace: register position out of range");
  }
  std::vector<bool> is_kept(dims.size(), false);
  for (int k : keep) is_kept[std::size_t(k)] = true;

  TraceSplit split;
  Dims traced_dims;
  for (std::size_t r = 0; r < dims.size(); ++r) {
    (is_kept[r] ? split.kept_dims : traced_dims).push_back(dims[r]);
  }
  split.kept_size = product(split.kept_dims);
  split.traced_size = product(traced_dims);

  const Index n = product(dims);
  split.kept.resize(std::size_t(n));
  split.traced.resize(std::size_t(n));
  std::vector<Index> multi(dims.size(), 0);
  for (Index k = 0; k < n; ++k) {
    Index kk = 0;
    Index tt = 0;
    for (std::size_t r = 0; r < dims.size(); ++r) {
      if (is_kept[r]) {
        kk = kk * dims[r] + multi[r];
      } else {
        tt = tt * dims[r] + multi[r];
      }
    }
    split.kept[std::size_t(k)] = kk;
    split.traced[std::size_t(k)] = tt;
    // Row-major increment.
    for (std::size_t r = dims.size(); r-- > 0;) {
      if (++multi[r] < dims[r]) break;
      multi[r] = 0;
    }
  }
  return split;
}

}  // namespace detail

/// Reduced state on the registers listed in `keep` (kept in original order).
template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real>& op, std::vector<int> keep) {
  const detail::TraceSplit split = detail::split_registers(op.dims(), std::move(keep));
  const Index n = op.size();
  std::vector<std::vector<Index>> groups(std::size_t(split.traced_size));
  for (Index k = 0; k < n; ++k) groups[std::size_t(split.traced[std::size_t(k)])].push_back(k);

  CMatrix<Real> out = CMatrix<Real>::Zero(split.kept_size, split.kept_size);
  const auto& m = op.matrix();
  for (const auto& group : groups) {
    for (Index i : group) {
      const Index ki = split.kept[std::size_t(i)];
      for (Index j : group) out(ki, split.kept[std::size_t(j)]) += m(i, j);
    }
  }
  return BasicDensityOperator<Real>(std::move(out), split.kept_dims);
}

/// Reduced state of a pure state, via reshaping into a (kept x traced) matrix.
template <typename Real>
BasicDensityOperator<Real> partial_trace_pure(const BasicStateVector<Real>& psi, std::vector<int> keep) {
  const detail::TraceSplit split = detail::split_registers(psi.dims(), std::move(keep));
  CMatrix<Real> x(split.kept_size, split.traced_size);
  const auto& amp = psi.amplitudes();
  for (Index k = 0; k < amp.size(); ++k) {
    x(split.kept[std::size_t(k)], split.traced[std::size_t(k)]) = amp[k];
  }
  return BasicDensityOperator<Real>(x * x.adjoint(), split.kept_dims);
}

/// Descending eigenvalues of a Hermitian matrix; the input is symmetrized first.
template <typename Derived>
BasicSpectrum<typename Eigen::NumTraits<typename Derived::Scalar>::Real> eigenvalues_hermitian(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw InvalidArgument("eigenvalues_hermitian: matrix is not square");
  const Mat sym = (m + m.adjoint()) * Real(0.5);
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalues_hermitian: eigensolver failed");
  return BasicSpectrum<Real>(solver.eigenvalues());
}

/// Spectrum of a density operator; eigenvalues below -1e-10 are an error.
template <typename Real>
BasicSpectrum<Real> eigenvalues_hermitian(const BasicDensityOperator<Real>& op) {
  BasicSpectrum<Real> spec = eigenvalues_hermitian(op.matrix());
  if (spec.values()[spec.size() - 1] < -Real(tol::kNegativeEigenvalue)) {
    throw InvalidArgument("density operator has a negative eigenvalue");
  }
  return spec;
}

/// <psi| rho |psi>
template <typename Real>
Real expectation(const BasicDensityOperator<Real>& rho, const BasicStateVector<Real>& psi) {
  if (rho.size() != psi.size()) throw InvalidDimension("expectation: dimension mismatch");
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

}  // namespace pnorm
