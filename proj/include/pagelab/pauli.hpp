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

// Pauli-basis expectation values and the predictability budget
// sum_{i>=1} <g_i>^2 = d - 1 for pure states, split into strings local on A
// (g_A (x) 1_B) and everything else.

#include "pagelab/parallel.hpp"
#include "pagelab/rng.hpp"
#include "pagelab/state.hpp"
#include "pagelab/stats.hpp"

#include <bit>
#include <string>
#include <string_view>
#include <vector>

namespace pagelab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr int kMaxPauliQubits = 31;

/// Element of {I, X, Y, Z}^n as a base-4 code: qubit q is digit n - 1 - q,
/// with I=0, X=1, Y=2, Z=3. Code 0 is the identity string.
class PauliString {
 public:
  PauliString(int n_qubits, std::uint64_t code) : n_qubits_(n_qubits), code_(code) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxPauliQubits) throw ValidationError("PauliString: qubit count out of range");
    if (code_ >> (2 * n_qubits_) != 0) throw ValidationError("PauliString: code exceeds 4^n");
    for (int q = 0; q < n_qubits_; ++q) {
      const auto l = letter(q);
      const std::uint64_t bit = std::uint64_t{1} << (n_qubits_ - 1 - q);
      if (l == Pauli::X || l == Pauli::Y) x_mask_ |= bit;
      if (l == Pauli::Z || l == Pauli::Y) z_mask_ |= bit;
      if (l == Pauli::Y) ++y_count_;
    }
  }

  /// Parses a string such as "XZI" (qubit 0 first).
  static PauliString parse(std::string_view text) {
    std::uint64_t code = 0;
    for (char c : text) {
      std::uint64_t digit = 0;
      switch (c) {
        case 'I': digit = 0; break;
        case 'X': digit = 1; break;
        case 'Y': digit = 2; break;
        case 'Z': digit = 3; break;
        default: throw ValidationError(std::string("PauliString::parse: bad letter '") + c + "'");
      }
      code = (code << 2) | digit;
    }
    return PauliString(static_cast<int>(text.size()), code);
  }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t code() const { return code_; }
  bool is_identity() const { return code_ == 0; }
  Pauli letter(int qubit) const { return static_cast<Pauli>((code_ >> (2 * (n_qubits_ - 1 - qubit))) & 3U); }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const { return y_count_; }

  /// True when every qubit outside `side` carries the identity.
  bool is_local_to(const Bipartition& part, Side side = Side::A) const {
    const Side other = side == Side::A ? Side::B : Side::A;
    for (int q : part.indices(other)) {
      if (letter(q) != Pauli::I) return false;
    }
    return true;
  }

  std::string to_string() const {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    for (int q = 0; q < n_qubits_; ++q) s.push_back(kLetters[static_cast<int>(letter(q))]);
    return s;
  }

 private:
  int n_qubits_;
  std::uint64_t code_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

namespace detail {

// i^k
inline Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) != 0 ? -1.0 : 1.0; }

}  // namespace detail

/// <psi|g|psi> with g|j> = i^{#Y} (-1)^{|j & z|} |j ^ x>. Returns the complex
/// value; the imaginary part is rounding residue.
inline Complex pauli_expectation_complex(const PureState& state, const PauliString& g) {
  if (state.n_qubits() != g.n_qubits()) throw DimensionError("pauli_expectation: qubit count mismatch");
  const std::uint64_t x = g.x_mask();
  const std::uint64_t z = g.z_mask();
  const ComplexVector& psi = state.amplitudes();
  Complex acc{0.0, 0.0};
  for (std::uint64_t j = 0; j < state.dim(); ++j) {
    acc += std::conj(psi(static_cast<Eigen::Index>(j ^ x))) * psi(static_cast<Eigen::Index>(j)) * detail::parity_sign(j & z);
  }
  return acc * detail::i_power(g.y_count());
}

inline double pauli_expectation(const PureState& state, const PauliString& g) {
  return pauli_expectation_complex(state, g).real();
}

/// tr(rho g) = sum_j i^{#Y} (-1)^{|j & z|} rho(j, j ^ x).
inline double pauli_expectation(const DensityMatrix& rho, const PauliString& g) {
  if (rho.dim() != dimension_of(g.n_qubits())) throw DimensionError("pauli_expectation: dimension mismatch");
  const std::uint64_t x = g.x_mask();
  const std::uint64_t z = g.z_mask();
  Complex acc{0.0, 0.0};
  for (std::uint64_t j = 0; j < rho.dim(); ++j) acc += rho(j, j ^ x) * detail::parity_sign(j & z);
  return (acc * detail::i_power(g.y_count())).real();
}

struct PredictabilityBudget {
  double total = 0.0;     ///< sum of <g_i>^2 over all non-identity strings
  double local_a = 0.0;   ///< strings of the form g_A (x) 1_B
  double nonlocal = 0.0;  ///< total - local_a
  std::size_t d = 0;
  std::size_t d_a = 0;
  std::size_t d_b = 0;
};

inline constexpr int kMaxExhaustiveBudgetQubits = 8;

namespace detail {

inline constexpr std::uint64_t kBudgetBlock = 1024;

inline std::uint64_t side_digit_mask(const Bipartition& part, Side side) {
  std::uint64_t mask = 0;
  for (int q : part.indices(side)) mask |= std::uint64_t{3} << (2 * (part.n_qubits() - 1 - q));
  return mask;
}

// Sums f(code)^2 over non-identity codes, split by whether the B digits are
// all identity. Blocks are fixed-size and merged in order, independent of workers.
template <typename Expectation>
PredictabilityBudget enumerate_budget(int n, const Bipartition& part, int workers, Expectation&& expectation) {
  const std::uint64_t n_codes = std::uint64_t{1} << (2 * n);
  const std::uint64_t b_mask = side_digit_mask(part, Side::B);
  const std::size_t n_blocks = static_cast<std::size_t>((n_codes + kBudgetBlock - 1) / kBudgetBlock);
  std::vector<CompensatedSum> totals(n_blocks);
  std::vector<CompensatedSum> locals(n_blocks);

  parallel_for(n_blocks, workers, [&](std::size_t block) {
    const std::uint64_t begin = std::max<std::uint64_t>(1, block * kBudgetBlock);
    const std::uint64_t end = std::min(n_codes, (block + 1) * kBudgetBlock);
    for (std::uint64_t code = begin; code < end; ++code) {
      const double e = expectation(PauliString(n, code));
      const double sq = e * e;
      totals[block] += sq;
      if ((code & b_mask) == 0) locals[block] += sq;
    }
  });

  CompensatedSum total;
  CompensatedSum local;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    total.merge(totals[b]);
    local.merge(locals[b]);
  }
  PredictabilityBudget out;
  out.total = total.value();
  out.local_a = local.value();
  out.nonlocal = out.total - out.local_a;
  out.d = part.dim();
  out.d_a = part.dim_a();
  out.d_b = part.dim_b();
  return out;
}

inline void check_exhaustive(int n) {
  if (n > kMaxExhaustiveBudgetQubits) {
    throw ResourceError("predictability_budget: " + std::to_string(n) +
                        " qubits is too many for exhaustive enumeration (max 8); use sampled_predictability_budget");
  }
}

}  // namespace detail

/// Exhaustive over all 4^n - 1 non-identity strings; n <= 8.
inline PredictabilityBudget predictability_budget(const PureState& state, const Bipartition& part, int workers = 1) {
  if (state.n_qubits() != part.n_qubits()) throw DimensionError("predictability_budget: qubit count mismatch");
  detail::check_exhaustive(state.n_qubits());
  return detail::enumerate_budget(state.n_qubits(), part, workers,
                                  [&](const PauliString& g) { return pauli_expectation(state, g); });
}

/// Same accounting for a mixed state on dim = 2^n (n <= 8).
inline PredictabilityBudget predictability_budget(const DensityMatrix& rho, const Bipartition& part, int workers = 1) {
  if (rho.dim() != part.dim()) throw DimensionError("predictability_budget: dimension mismatch");
  detail::check_exhaustive(part.n_qubits());
  return detail::enumerate_budget(part.n_qubits(), part, workers,
                                  [&](const PauliString& g) { return pauli_expectation(rho, g); });
}

/// Budget estimated from uniformly drawn strings, for registers too large to enumerate.
struct SampledBudget {
  EnsembleEstimate total;    ///< (4^n - 1) x mean <g>^2 over non-identity strings
  EnsembleEstimate local_a;  ///< (4^{n_A} - 1) x mean <g>^2 over non-identity A-local strings
  std::size_t d = 0;
  std::size_t d_a = 0;
  std::size_t d_b = 0;
};

namespace detail {

inline EnsembleEstimate scaled(EnsembleEstimate e, double factor) {
  return {e.mean * factor, e.variance * factor * factor, e.count, e.std_error * factor};
}

}  // namespace detail

inline SampledBudget sampled_predictability_budget(const PureState& state, const Bipartition& part, std::size_t n_strings,
                                                   PhiloxStream& rng) {
  if (state.n_qubits() != part.n_qubits()) throw DimensionError("sampled_predictability_budget: qubit count mismatch");
  if (n_strings < 2) throw ValidationError("sampled_predictability_budget: need at least two strings");
  const int n = state.n_qubits();
  const int n_a = part.n_a();
  const std::uint64_t n_codes = std::uint64_t{1} << (2 * n);
  const std::uint64_t n_local_codes = std::uint64_t{1} << (2 * n_a);

  std::vector<double> global_sq(n_strings);
  for (auto& v : global_sq) {
    const double e = pauli_expectation(state, PauliString(n, 1 + rng() % (n_codes - 1)));
    v = e * e;
  }

  SampledBudget out;
  out.total = detail::scaled(estimate_from_samples(global_sq), static_cast<double>(n_codes - 1));
  if (n_a > 0) {
    std::vector<double> local_sq(n_strings);
    for (auto& v : local_sq) {
      const std::uint64_t a_code = 1 + rng() % (n_local_codes - 1);
      std::uint64_t code = 0;
      for (int k = 0; k < n_a; ++k) {
        const std::uint64_t digit = (a_code >> (2 * (n_a - 1 - k))) & 3U;
        code |= digit << (2 * (n - 1 - part.a_indices()[static_cast<std::size_t>(k)]));
      }
      const double e = pauli_expectation(state, PauliString(n, code));
      v = e * e;
    }
    out.local_a = detail::scaled(estimate_from_samples(local_sq), static_cast<double>(n_local_codes - 1));
  } else {
    out.local_a = {0.0, 0.0, n_strings, 0.0};
  }
  out.d = part.dim();
  out.d_a = part.dim_a();
  out.d_b = part.dim_b();
  return out;
}

enum class BudgetSide { A, total };

/// tr(rho^2) = (1/d)(1 + total) or tr(rho_A^2) = (1/d_A)(1 + local_a).
inline double purity_from_budget(const PredictabilityBudget& b, BudgetSide side) {
  if (side == BudgetSide::total) return (1.0 + b.total) / static_cast<double>(b.d);
  return (1.0 + b.local_a) / static_cast<double>(b.d_a);
}

/// Haar expectation of <g>^2 for any non-identity string: (d - 1)/(d^2 - 1) = 1/(d + 1).
inline double expected_predictability(std::uint64_t d) {
  if (d < 2 || !is_power_of_two(d)) throw ValidationError("expected_predictability: d must be a power of two >= 2");
  const double dd = static_cast<double>(d);
  return (dd - 1.0) / (dd * dd - 1.0);
}

/// Haar expectation of the local predictability on A: (d_A^2 - 1)(d - 1)/(d^2 - 1).
inline double expected_local_predictability(std::uint64_t d_a, std::uint64_t d) {
  if (!is_power_of_two(d_a) || !is_power_of_two(d) || d < 2 || d % d_a != 0) {
    throw ValidationError("expected_local_predictability: need powers of two with d_a | d and d >= 2");
  }
  const double da = static_cast<double>(d_a);
  const double dd = static_cast<double>(d);
  return (da * da - 1.0) * (dd - 1.0) / (dd * dd - 1.0);
}

}  // namespace pagelab
