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

#include "pagelab/state.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pagelab {

enum class LogBase { two, e };

inline double log_in(LogBase base, double x) { return base == LogBase::two ? std::log2(x) : std::log(x); }

/// Renyi order q >= 0. q == 1 selects the von Neumann limit; q == +inf the min-entropy.
class EntropyOrder {
 public:
  explicit EntropyOrder(double q) : q_(q) {
    if (!(q >= 0.0)) throw ValidationError("EntropyOrder: q must be non-negative");
  }
  static EntropyOrder von_neumann() { return EntropyOrder(1.0); }

  double q() const { return q_; }
  bool is_von_neumann() const { return q_ == 1.0; }

 private:
  double q_;
};

inline constexpr double kRankThreshold = 1e-10;
inline constexpr double kZeroLogThreshold = 1e-15;

/// Eigenvalues of a density matrix (or a classical distribution), each in
/// [0, 1], sorted descending, summing to 1.
class Spectrum {
 public:
  /// Entries within kPsdTolerance of [0, 1] are clamped; a sum within
  /// kSpectrumSumTolerance of 1 is renormalized exactly.
  explicit Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    if (values_.empty()) throw ValidationError("Spectrum: empty");
    double sum = 0.0;
    for (double& v : values_) {
      if (!(v >= -kPsdTolerance && v <= 1.0 + kPsdTolerance)) {
        throw ValidationError("Spectrum: eigenvalue " + std::to_string(v) + " outside [0, 1]");
      }
      v = std::clamp(v, 0.0, 1.0);
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= kSpectrumSumTolerance)) {
      throw ValidationError("Spectrum: eigenvalues sum to " + std::to_string(sum));
    }
    if (sum != 1.0) {
      for (double& v : values_) v /= sum;
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  static Spectrum from_probabilities(std::span<const double> p) { return Spectrum(std::vector<double>(p.begin(), p.end())); }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Eigenvalues of rho. In-tolerance negatives clamp to zero and residual sum
/// drift is removed (see the Spectrum constructor); larger violations are errors.
inline Spectrum spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("spectrum: eigensolver did not converge");
  const RealVector& ev = solver.eigenvalues();

  std::vector<double> values(ev.data(), ev.data() + ev.size());
  return Spectrum(std::move(values));
}

/// sum_i lambda_i log(1/lambda_i), with 0 log(1/0) = 0 for lambda <= 1e-15.
inline double von_neumann_entropy(const Spectrum& s, LogBase base = LogBase::two) {
  double acc = 0.0;
  for (double v : s.values()) {
    if (v > kZeroLogThreshold) acc -= v * log_in(base, v);
  }
  return std::max(0.0, acc);
}

inline double renyi_entropy(const Spectrum& s, EntropyOrder order, LogBase base = LogBase::two) {
  if (order.is_von_neumann()) return von_neumann_entropy(s, base);
  const double q = order.q();
  if (q == 0.0) {
    const auto rank = std::count_if(s.values().begin(), s.values().end(), [](double v) { return v > kRankThreshold; });
    return log_in(base, static_cast<double>(rank));
  }
  if (std::isinf(q)) return std::max(0.0, -log_in(base, s[0]));

  double power_sum = 0.0;
  for (double v : s.values()) {
    if (v > 0.0) power_sum += std::pow(v, q);
  }
  return std::max(0.0, log_in(base, power_sum) / (1.0 - q));
}

/// Shannon entropy of a classical probability vector.
inline double shannon_entropy(std::span<const double> probabilities, LogBase base = LogBase::two) {
  return von_neumann_entropy(Spectrum::from_probabilities(probabilities), base);
}

/// tr(rho^2) = sum_jk |rho_jk|^2 (rho Hermitian).
inline double purity(const DensityMatrix& rho) { return rho.entries().squaredNorm(); }

/// sum_i lambda_i^2; exactly 1 for a single-entry spectrum.
inline double purity(const Spectrum& s) {
  double acc = 0.0;
  for (double v : s.values()) acc += v * v;
  return acc;
}

/// Renyi entropies at q = 1 - epsilon and q = 1 + epsilon, bracketing the von Neumann value.
inline std::pair<double, double> renyi_continuity_check(const Spectrum& s, double epsilon, LogBase base = LogBase::two) {
  if (!(epsilon > 0.0 && epsilon <= 0.01)) throw ValidationError("renyi_continuity_check: epsilon must lie in (0, 0.01]");
  return {renyi_entropy(s, EntropyOrder(1.0 - epsilon), base), renyi_entropy(s, EntropyOrder(1.0 + epsilon), base)};
}

}  // namespace pagelab
