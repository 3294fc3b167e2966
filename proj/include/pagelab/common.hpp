// Copyright 2026 The pagelab Authors
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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pagelab {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together (state vs. partition, matrix vs. state, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition or a type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A request would exceed the configured memory budget or supported scale.
class ResourceError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kSpectrumSumTolerance = 1e-10;

/// Largest register the dense Monte Carlo paths accept.
inline constexpr int kMaxQubits = 14;

inline constexpr std::size_t dimension_of(int n_qubits) {
  return std::size_t{1} << n_qubits;
}

inline constexpr bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace pagelab
