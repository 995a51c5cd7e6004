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

#include <stdexcept>
#include <string>

namespace pnorm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Top eigenvalue is 1, so the renormalized residual spectrum does not exist.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// Closed-form subspace size evaluated to zero.
class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

/// Permutation Gram matrix is singular (d < n).
class SingularGram : public Error {
 public:
  using Error::Error;
};

/// Requested computation exceeds the configured memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A deterministic inequality failed on computed data.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

namespace tol {
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kStateNorm = 1e-12;
inline constexpr double kSpectrumNormalization = 1e-8;
}  // namespace tol

}  // namespace pnorm
