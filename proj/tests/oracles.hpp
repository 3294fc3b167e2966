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

// Independent reference implementations used only by tests. None of these
// share code paths with the library routine they check.

#include "pagelab/pagelab.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace pagelab::oracle {

inline int qubit_bit(std::size_t index, int n, int qubit) { return static_cast<int>((index >> (n - 1 - qubit)) & 1U); }

/// rho_A(a, a') = sum over full indices (i, j) whose B bits agree of rho(i, j),
/// with a, a' read off the A bits directly.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int n, const std::vector<int>& keep) {
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const auto local = [&](std::size_t index, const std::vector<int>& qubits) {
    std::size_t v = 0;
    for (int q : qubits) v = (v << 1) | static_cast<std::size_t>(qubit_bit(index, n, q));
    return v;
  };
  const std::size_t d = std::size_t{1} << n;
  const auto dk = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (local(i, traced) != local(j, traced)) continue;
      out(static_cast<Eigen::Index>(local(i, keep)), static_cast<Eigen::Index>(local(j, keep))) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

inline ComplexMatrix single_pauli(char letter) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// Dense Kronecker product, qubit 0 as the leftmost factor.
inline ComplexMatrix dense_pauli(const std::string& letters) {
  ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
  for (char c : letters) {
    const ComplexMatrix p = single_pauli(c);
    ComplexMatrix next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index i = 0; i < acc.rows(); ++i) {
      for (Eigen::Index j = 0; j < acc.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = acc(i, j) * p;
    }
    acc = next;
  }
  return acc;
}

/// Eigenvalues through the general complex Schur route (not the Hermitian solver), sorted descending.
inline std::vector<double> eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  std::vector<double> v;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) v.push_back(solver.eigenvalues()(i).real());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

/// Haar unitary via QR of a complex Ginibre matrix with the R-diagonal phases removed.
inline ComplexMatrix haar_unitary(std::size_t d, PhiloxStream& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto [re, im] = rng.normal_pair();
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

/// Mixture of `terms` Haar states with flat-simplex weights: a generic full-rank density matrix.
inline DensityMatrix random_mixed(int n, int terms, PhiloxStream& rng) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  for (int t = 0; t < terms; ++t) {
    const PureState s = sample_haar_pure(n, rng);
    m += (w[static_cast<std::size_t>(t)] / total) * s.amplitudes() * s.amplitudes().adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  return DensityMatrix(m);
}

/// Random non-empty proper subset of [0, n).
inline std::vector<int> random_proper_subset(int n, PhiloxStream& rng) {
  for (;;) {
    std::vector<int> a;
    for (int q = 0; q < n; ++q) {
      if (rng() & 1U) a.push_back(q);
    }
    if (!a.empty() && static_cast<int>(a.size()) < n) return a;
  }
}

}  // namespace pagelab::oracle
