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

// Haar-random pure states and flat-simplex classical distributions.

#include "pagelab/rng.hpp"
#include "pagelab/state.hpp"
#include "pagelab/stats.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace pagelab {

inline void check_sampler_size(int n, const char* who) {
  if (n < 1 || n > kMaxQubits) {
    throw ValidationError(std::string(who) + ": size " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

/// Unitarily invariant pure state: every real and imaginary part is an
/// independent standard normal, then the vector is normalized.
inline PureState sample_haar_pure(int n_qubits, PhiloxStream& rng) {
  check_sampler_size(n_qubits, "sample_haar_pure");
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  ComplexVector v(d);
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto [re, im] = rng.normal_pair();
      v(j) = Complex{re, im};
    }
    const double norm = v.norm();
    if (norm >= 1e-100) {
      v /= norm;
      return PureState(n_qubits, std::move(v));
    }
  }
  throw Error("sample_haar_pure: degenerate Gaussian draw twice in a row");
}

inline void check_unitary(const ComplexMatrix& u, std::size_t dim, double tolerance = 1e-10) {
  if (static_cast<std::size_t>(u.rows()) != dim || static_cast<std::size_t>(u.cols()) != dim) {
    throw DimensionError("unitary must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  const double dev = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= tolerance)) throw ValidationError("matrix is not unitary (max |U^dag U - 1| = " + std::to_string(dev) + ")");
}

/// u |state>. The result is renormalized to absorb the 1e-10 unitarity slack.
inline PureState rotate_state(const PureState& state, const ComplexMatrix& u) {
  check_unitary(u, state.dim());
  return PureState::normalized(state.n_qubits(), u * state.amplitudes());
}

/// Probability vector over 2^n_bits outcomes. n_bits == 0 is the one-outcome marginal.
class ClassicalState {
 public:
  ClassicalState(int n_bits, std::vector<double> probabilities) : n_bits_(n_bits), p_(std::move(probabilities)) {
    if (n_bits_ < 0 || n_bits_ > kMaxPartitionQubits) throw ValidationError("ClassicalState: bit count out of range");
    if (p_.size() != dimension_of(n_bits_)) throw DimensionError("ClassicalState: expected 2^n_bits probabilities");
    CompensatedSum sum;
    for (double x : p_) {
      if (!(x >= 0.0)) throw ValidationError("ClassicalState: negative or NaN probability");
      sum += x;
    }
    if (!(std::abs(sum.value() - 1.0) <= 1e-12)) throw ValidationError("ClassicalState: probabilities do not sum to 1");
  }

  int n_bits() const { return n_bits_; }
  std::size_t size() const { return p_.size(); }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  int n_bits_;
  std::vector<double> p_;
};

/// Flat Dirichlet(1, ..., 1) draw: normalized i.i.d. unit exponentials.
inline ClassicalState sample_classical_uniform(int n_bits, PhiloxStream& rng) {
  check_sampler_size(n_bits, "sample_classical_uniform");
  std::vector<double> p(dimension_of(n_bits));
  CompensatedSum sum;
  for (double& x : p) {
    x = rng.exponential();
    sum += x;
  }
  const double total = sum.value();
  for (double& x : p) x /= total;
  return ClassicalState(n_bits, std::move(p));
}

/// Marginal on the kept side: the diagonal analogue of the partial trace.
inline ClassicalState classical_marginal(const ClassicalState& state, const Bipartition& part, Side keep = Side::A) {
  if (state.n_bits() != part.n_qubits()) throw DimensionError("classical_marginal: bit count mismatch");
  const Side traced = keep == Side::A ? Side::B : Side::A;
  const auto kept = part.offsets(keep);
  const auto summed = part.offsets(traced);
  std::vector<double> out(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    CompensatedSum acc;
    for (std::size_t t : summed) acc += state[kept[k] | t];
    out[k] = acc.value();
  }
  return ClassicalState(static_cast<int>(part.indices(keep).size()), std::move(out));
}

/// diag(p) as a density matrix.
inline DensityMatrix diagonal_embedding(const ClassicalState& state) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(state.size()), static_cast<Eigen::Index>(state.size()));
  for (std::size_t i = 0; i < state.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = state[i];
  return DensityMatrix(std::move(m));
}

inline double classical_purity(const ClassicalState& state) {
  CompensatedSum acc;
  for (double x : state.probabilities()) acc += x * x;
  return acc.value();
}

}  // namespace pagelab
