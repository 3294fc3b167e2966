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

// Pure and mixed states on n qubits, bipartitions, partial trace, Schmidt
// decomposition and the single-qubit Bloch representation.
//
// Bit convention: qubit 0 is the most-significant bit of a computational-basis
// index, so on n qubits qubit q lives at bit position n - 1 - q. The same
// convention applies inside a subsystem: the lowest-numbered kept qubit is the
// most-significant bit of the subsystem index.

#include "pagelab/common.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pagelab {

inline constexpr int kMaxStateQubits = 30;
inline constexpr int kMaxPartitionQubits = 24;

class PureState {
 public:
  /// Takes ownership of already-normalized amplitudes; throws on any invariant violation.
  PureState(int n_qubits, ComplexVector amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxStateQubits) {
      throw ValidationError("PureState: qubit count " + std::to_string(n_qubits_) + " out of range");
    }
    if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits_)) {
      throw DimensionError("PureState: expected " + std::to_string(dimension_of(n_qubits_)) +
                           " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
      throw ValidationError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
    }
  }

  /// Rescales `amplitudes` to unit norm first.
  static PureState normalized(int n_qubits, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ValidationError("PureState: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return PureState(n_qubits, std::move(amplitudes));
  }

  static PureState basis(int n_qubits, std::size_t index) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits || index >= dimension_of(n_qubits)) {
      throw ValidationError("PureState::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(n_qubits, std::move(v));
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t j) const { return amplitudes_(static_cast<Eigen::Index>(j)); }

 private:
  int n_qubits_;
  ComplexVector amplitudes_;
};

/// |lhs> (x) |rhs>; the qubits of `lhs` come first.
inline PureState tensor(const PureState& lhs, const PureState& rhs) {
  ComplexVector v(static_cast<Eigen::Index>(lhs.dim() * rhs.dim()));
  for (std::size_t i = 0; i < lhs.dim(); ++i) {
    for (std::size_t j = 0; j < rhs.dim(); ++j) {
      v(static_cast<Eigen::Index>(i * rhs.dim() + j)) = lhs[i] * rhs[j];
    }
  }
  return PureState::normalized(lhs.n_qubits() + rhs.n_qubits(), std::move(v));
}

/// Hermitian, unit-trace operator. Positivity is checked when the spectrum is
/// taken (see entropy.hpp), not on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
      throw DimensionError("DensityMatrix: entries must be a non-empty square matrix");
    }
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermitianTolerance)) {
      throw ValidationError("DensityMatrix: not Hermitian (max deviation " + std::to_string(asym) + ")");
    }
    const Complex tr = entries_.trace();
    if (!(std::abs(tr - Complex{1.0, 0.0}) <= kTraceTolerance)) {
      throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
    }
  }

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  ComplexMatrix entries_;
};

enum class Side { A, B };

/// Splits n qubits into subsystem A (arbitrary index subset) and its complement B.
class Bipartition {
 public:
  /// `a_indices` must be a non-empty proper subset of [0, n_qubits).
  Bipartition(int n_qubits, std::vector<int> a_indices) : Bipartition(n_qubits, std::move(a_indices), false) {}

  /// Like the constructor but also accepts the empty and the full subset.
  static Bipartition with_edges(int n_qubits, std::vector<int> a_indices) {
    return Bipartition(n_qubits, std::move(a_indices), true);
  }

  /// A = the first `n_a` qubits; 0 and n_qubits are allowed.
  static Bipartition prefix(int n_qubits, int n_a) {
    if (n_a < 0 || n_a > n_qubits) throw ValidationError("Bipartition::prefix: n_a out of range");
    std::vector<int> a(static_cast<std::size_t>(n_a));
    for (int q = 0; q < n_a; ++q) a[static_cast<std::size_t>(q)] = q;
    return with_edges(n_qubits, std::move(a));
  }

  int n_qubits() const { return n_qubits_; }
  int n_a() const { return static_cast<int>(a_.size()); }
  int n_b() const { return static_cast<int>(b_.size()); }
  std::size_t dim() const { return dimension_of(n_qubits_); }
  std::size_t dim_a() const { return dimension_of(n_a()); }
  std::size_t dim_b() const { return dimension_of(n_b()); }
  const std::vector<int>& a_indices() const { return a_; }
  const std::vector<int>& b_indices() const { return b_; }
  const std::vector<int>& indices(Side side) const { return side == Side::A ? a_ : b_; }

  bool contains(int qubit) const { return std::binary_search(a_.begin(), a_.end(), qubit); }
  Bipartition complement() const { return with_edges(n_qubits_, b_); }

  /// Global basis index for subsystem indices (a, b).
  std::size_t join(std::size_t a, std::size_t b) const { return a_offsets_[a] | b_offsets_[b]; }

  /// Global-index bits contributed by subsystem index `local` of `side`.
  std::span<const std::size_t> offsets(Side side) const {
    return side == Side::A ? std::span<const std::size_t>(a_offsets_) : std::span<const std::size_t>(b_offsets_);
  }

  friend bool operator==(const Bipartition& l, const Bipartition& r) {
    return l.n_qubits_ == r.n_qubits_ && l.a_ == r.a_;
  }

 private:
  Bipartition(int n_qubits, std::vector<int> a_indices, bool allow_edges) : n_qubits_(n_qubits), a_(std::move(a_indices)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxPartitionQubits) {
      throw ValidationError("Bipartition: qubit count " + std::to_string(n_qubits_) + " out of range");
    }
    std::sort(a_.begin(), a_.end());
    if (std::adjacent_find(a_.begin(), a_.end()) != a_.end()) {
      throw ValidationError("Bipartition: duplicate qubit index");
    }
    for (int q : a_) {
      if (q < 0 || q >= n_qubits_) throw ValidationError("Bipartition: qubit index " + std::to_string(q) + " out of range");
    }
    if (!allow_edges && (a_.empty() || static_cast<int>(a_.size()) == n_qubits_)) {
      throw ValidationError("Bipartition: subsystem A must be a non-empty proper subset");
    }
    for (int q = 0; q < n_qubits_; ++q) {
      if (!std::binary_search(a_.begin(), a_.end(), q)) b_.push_back(q);
    }
    a_offsets_ = scatter_table(a_);
    b_offsets_ = scatter_table(b_);
  }

  std::vector<std::size_t> scatter_table(const std::vector<int>& qubits) const {
    const int k = static_cast<int>(qubits.size());
    std::vector<std::size_t> table(dimension_of(k), 0);
    for (std::size_t local = 0; local < table.size(); ++local) {
      std::size_t global = 0;
      for (int i = 0; i < k; ++i) {
        if ((local >> (k - 1 - i)) & 1U) global |= std::size_t{1} << (n_qubits_ - 1 - qubits[static_cast<std::size_t>(i)]);
      }
      table[local] = global;
    }
    return table;
  }

  int n_qubits_;
  std::vector<int> a_;
  std::vector<int> b_;
  std::vector<std::size_t> a_offsets_;
  std::vector<std::size_t> b_offsets_;
};

inline DensityMatrix density_from_pure(const PureState& state) {
  const ComplexVector& psi = state.amplitudes();
  return DensityMatrix(psi * psi.adjoint());
}

/// Reshapes the amplitudes into the d_A x d_B coefficient matrix M(a, b) = <a,b|psi>.
inline ComplexMatrix amplitude_matrix(const PureState& state, const Bipartition& part) {
  if (state.n_qubits() != part.n_qubits()) throw DimensionError("amplitude_matrix: qubit count mismatch");
  const auto rows = static_cast<Eigen::Index>(part.dim_a());
  const auto cols = static_cast<Eigen::Index>(part.dim_b());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index b = 0; b < cols; ++b) {
    for (Eigen::Index a = 0; a < rows; ++a) {
      m(a, b) = state[part.join(static_cast<std::size_t>(a), static_cast<std::size_t>(b))];
    }
  }
  return m;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const Bipartition& part, Side keep) {
  if (rho.dim() != part.dim()) {
    throw DimensionError("partial_trace: matrix dimension " + std::to_string(rho.dim()) +
                         " does not match 2^" + std::to_string(part.n_qubits()));
  }
  const Side traced = keep == Side::A ? Side::B : Side::A;
  const auto kept_offsets = part.offsets(keep);
  const auto traced_offsets = part.offsets(traced);
  if (traced_offsets.size() == 1) return rho;

  const auto dk = static_cast<Eigen::Index>(kept_offsets.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const ComplexMatrix& m = rho.entries();
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : traced_offsets) {
        acc += m(static_cast<Eigen::Index>(kept_offsets[static_cast<std::size_t>(i)] | t),
                 static_cast<Eigen::Index>(kept_offsets[static_cast<std::size_t>(j)] | t));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

/// Reduced state of a pure state without forming the full density matrix.
inline DensityMatrix reduced_density(const PureState& state, const Bipartition& part, Side keep) {
  const ComplexMatrix m = amplitude_matrix(state, part);
  if (keep == Side::A) return DensityMatrix(m * m.adjoint());
  return DensityMatrix(m.transpose() * m.conjugate());
}

/// Reduced state on whichever side has the smaller dimension (A on ties).
/// Both reduced states of a pure state share their nonzero spectrum.
inline DensityMatrix reduced_density_smaller_side(const PureState& state, const Bipartition& part) {
  return reduced_density(state, part, part.dim_a() <= part.dim_b() ? Side::A : Side::B);
}

struct SchmidtSpectrum {
  /// Non-negative, sorted descending, squares sum to one.
  RealVector coefficients;

  std::size_t rank() const { return static_cast<std::size_t>(coefficients.size()); }
  RealVector squares() const { return coefficients.array().square().matrix(); }
};

inline constexpr double kSchmidtCutoff = 1e-10;

/// Singular values of the amplitude matrix. Coefficients at or below
/// kSchmidtCutoff are dropped, so the length equals the numerical Schmidt rank.
inline SchmidtSpectrum schmidt_decompose(const PureState& state, const Bipartition& part) {
  const ComplexMatrix m = amplitude_matrix(state, part);
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sv.size() && sv(keep) > kSchmidtCutoff) ++keep;

  SchmidtSpectrum out{sv.head(keep)};
  const double total = out.coefficients.squaredNorm();
  if (!(std::abs(total - 1.0) <= 1e-10)) {
    throw ValidationError("schmidt_decompose: squared coefficients sum to " + std::to_string(total));
  }
  if (out.rank() > std::min(part.dim_a(), part.dim_b())) {
    throw ValidationError("schmidt_decompose: rank exceeds min(d_A, d_B)");
  }
  return out;
}

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
};

/// (<X>, <Y>, <Z>) of a single-qubit state.
inline BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("bloch_vector: expected a 2x2 density matrix");
  const Complex r01 = rho(0, 1);
  BlochVector v{2.0 * r01.real(), -2.0 * r01.imag(), (rho(0, 0) - rho(1, 1)).real()};
  if (!(v.norm_squared() <= 1.0 + 1e-10)) throw ValidationError("bloch_vector: vector lies outside the unit ball");
  return v;
}

/// rho = (1 + xX + yY + zZ) / 2.
inline DensityMatrix density_from_bloch(const BlochVector& v) {
  if (!(v.norm_squared() <= 1.0 + 1e-10)) throw ValidationError("density_from_bloch: vector lies outside the unit ball");
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + v.z);
  m(1, 1) = 0.5 * (1.0 - v.z);
  m(0, 1) = Complex{0.5 * v.x, -0.5 * v.y};
  m(1, 0) = Complex{0.5 * v.x, 0.5 * v.y};
  return DensityMatrix(std::move(m));
}

}  // namespace pagelab
