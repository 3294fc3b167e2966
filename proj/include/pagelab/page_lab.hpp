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

// Monte Carlo Page curves and their analytic references.
//
// Every sample owns a Philox stream keyed by (seed, point, sample index) and
// writes into its own slot; estimates are reduced in sample order. Results are
// therefore bit-identical for any worker count.

#include "pagelab/entropy.hpp"
#include "pagelab/parallel.hpp"
#include "pagelab/pauli.hpp"
#include "pagelab/sampler.hpp"
#include "pagelab/stats.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace pagelab {

/// Lubkin's Haar average of tr(rho_A^2): (d_A + d_B)/(d_A d_B + 1).
inline double lubkin_expected_purity(std::uint64_t d_a, std::uint64_t d_b) {
  if (d_a < 1 || d_b < 1) throw ValidationError("lubkin_expected_purity: dimensions must be positive");
  const double a = static_cast<double>(d_a);
  const double b = static_cast<double>(d_b);
  return (a + b) / (a * b + 1.0);
}

/// The same average assembled from the predictability budget:
/// (1/d_A)(1 + (d_A^2 - 1)(d - 1)/(d^2 - 1)) with d = d_A d_B.
inline double expected_purity_from_predictability(std::uint64_t d_a, std::uint64_t d_b) {
  if (d_a < 1 || d_b < 1) throw ValidationError("expected_purity_from_predictability: dimensions must be positive");
  const double a = static_cast<double>(d_a);
  const double d = a * static_cast<double>(d_b);
  if (d == 1.0) return 1.0;
  return (1.0 + (a * a - 1.0) * (d - 1.0) / (d * d - 1.0)) / a;
}

/// Flat-Dirichlet average of the marginal purity sum_a p_A(a)^2: (d_B + 1)/(d + 1).
/// The marginal of a flat Dirichlet on d outcomes is Dirichlet(d_B, ..., d_B) on d_A outcomes.
inline double classical_expected_purity(std::uint64_t d_a, std::uint64_t d_b) {
  if (d_a < 1 || d_b < 1) throw ValidationError("classical_expected_purity: dimensions must be positive");
  const double b = static_cast<double>(d_b);
  return (b + 1.0) / (static_cast<double>(d_a) * b + 1.0);
}

/// Monotone reference line n_a log 2.
inline double semiclassical_curve(int n_qubits, int n_a, LogBase base = LogBase::two) {
  if (n_a < 0 || n_a > n_qubits) throw ValidationError("semiclassical_curve: n_a out of range");
  return static_cast<double>(n_a) * log_in(base, 2.0);
}

inline constexpr std::uint64_t kDefaultMemoryLimit = std::uint64_t{2} << 30;

enum class Ensemble { haar_pure, classical_flat };

struct PageCurveConfig {
  int n_qubits = 8;
  EntropyOrder order = EntropyOrder::von_neumann();
  LogBase base = LogBase::two;
  std::size_t samples_per_point = 2000;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Draw a fresh uniformly random A of size n_a per sample instead of the first n_a qubits.
  bool random_subsets = false;
  std::uint64_t memory_limit_bytes = kDefaultMemoryLimit;
};

struct PageCurvePoint {
  int n_a = 0;
  EnsembleEstimate mean_entropy;
  EnsembleEstimate mean_purity;
  double analytic_purity = 0.0;
  double semiclassical_entropy = 0.0;
};

struct PageCurveResult {
  Ensemble ensemble = Ensemble::haar_pure;
  PageCurveConfig config;
  std::vector<PageCurvePoint> points;  ///< n_a = 0..n_qubits
};

/// Rough peak footprint: per worker the state, its reshaped copy, the reduced
/// matrix and eigensolver workspace (each <= 16 * 2^n bytes), plus sample buffers.
inline double estimate_memory_bytes(int n_qubits, int workers, std::size_t samples) {
  return 4.0 * 16.0 * std::ldexp(1.0, n_qubits) * static_cast<double>(std::max(workers, 1)) +
         2.0 * 8.0 * static_cast<double>(samples);
}

inline void check_memory_guard(int n_qubits, int workers, std::size_t samples, std::uint64_t limit_bytes) {
  const double need = estimate_memory_bytes(n_qubits, workers, samples);
  if (need > static_cast<double>(limit_bytes)) {
    throw ResourceError("memory guard: " + std::to_string(n_qubits) + " qubits needs about " +
                        std::to_string(static_cast<long double>(need)) + " bytes, limit is " + std::to_string(limit_bytes) +
                        " bytes (raise --memory-limit)");
  }
}

namespace detail {

inline constexpr std::uint64_t kClassicalStreamTag = std::uint64_t{1} << 63;
inline constexpr std::uint64_t kConcentrationStreamTag = std::uint64_t{1} << 62;

inline std::uint64_t point_stream(int n_a, std::size_t sample) {
  return (static_cast<std::uint64_t>(n_a) << 32) | static_cast<std::uint64_t>(sample);
}

inline void validate_curve_config(const PageCurveConfig& c) {
  if (c.workers < 1) throw ValidationError("workers must be >= 1");
  if (c.n_qubits < 1) throw ValidationError("qubit count must be positive");
  check_memory_guard(c.n_qubits, c.workers, c.samples_per_point, c.memory_limit_bytes);
  if (c.n_qubits < 2 || c.n_qubits > kMaxQubits) {
    throw ValidationError("qubit count " + std::to_string(c.n_qubits) + " outside [2, " + std::to_string(kMaxQubits) + "]");
  }
  if (c.samples_per_point < 100) throw ValidationError("samples per point must be >= 100");
}

}  // namespace detail

/// Uniformly random subset of `n_a` qubits (partial Fisher-Yates on rng() % k).
inline Bipartition random_subset(int n_qubits, int n_a, PhiloxStream& rng) {
  std::vector<int> qubits(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) qubits[static_cast<std::size_t>(q)] = q;
  for (int i = 0; i < n_a; ++i) {
    const auto remaining = static_cast<std::uint64_t>(n_qubits - i);
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng() % remaining);
    std::swap(qubits[static_cast<std::size_t>(i)], qubits[j]);
  }
  qubits.resize(static_cast<std::size_t>(n_a));
  return Bipartition::with_edges(n_qubits, std::move(qubits));
}

struct PointSample {
  PureState state;
  Bipartition part;
};

/// Reproduces exactly the state and partition used for sample `sample` of point `n_a`.
inline PointSample draw_point_sample(const PageCurveConfig& c, int n_a, std::size_t sample) {
  PhiloxStream rng(c.seed, detail::point_stream(n_a, sample));
  PureState state = sample_haar_pure(c.n_qubits, rng);
  Bipartition part = c.random_subsets ? random_subset(c.n_qubits, n_a, rng) : Bipartition::prefix(c.n_qubits, n_a);
  return {std::move(state), std::move(part)};
}

namespace detail {

template <typename SampleFn>
PageCurveResult run_curve(const PageCurveConfig& c, Ensemble ensemble, SampleFn&& sample_fn) {
  const std::size_t n_points = static_cast<std::size_t>(c.n_qubits) + 1;
  const std::size_t n = c.samples_per_point;
  std::vector<double> entropy(n_points * n);
  std::vector<double> purity_values(n_points * n);

  parallel_for(n_points * n, c.workers, [&](std::size_t i) {
    const int n_a = static_cast<int>(i / n);
    const auto [s, p] = sample_fn(n_a, i % n);
    entropy[i] = s;
    purity_values[i] = p;
  });

  PageCurveResult result{ensemble, c, {}};
  result.points.reserve(n_points);
  for (std::size_t k = 0; k < n_points; ++k) {
    const int n_a = static_cast<int>(k);
    const std::uint64_t d_a = dimension_of(n_a);
    const std::uint64_t d_b = dimension_of(c.n_qubits - n_a);
    PageCurvePoint point;
    point.n_a = n_a;
    point.mean_entropy = estimate_from_samples(std::span<const double>(entropy).subspan(k * n, n));
    point.mean_purity = estimate_from_samples(std::span<const double>(purity_values).subspan(k * n, n));
    point.analytic_purity = ensemble == Ensemble::haar_pure ? lubkin_expected_purity(d_a, d_b) : classical_expected_purity(d_a, d_b);
    point.semiclassical_entropy = semiclassical_curve(c.n_qubits, n_a, c.base);
    result.points.push_back(point);
  }
  return result;
}

}  // namespace detail

/// Subsystem entropy and purity of a pure state, evaluated on the smaller side of the cut.
struct SubsystemValues {
  double entropy = 0.0;
  double purity = 0.0;
};

inline SubsystemValues subsystem_values(const PureState& state, const Bipartition& part, EntropyOrder order, LogBase base) {
  const Spectrum s = spectrum(reduced_density_smaller_side(state, part));
  return {renyi_entropy(s, order, base), purity(s)};
}

inline PageCurveResult estimate_page_curve(const PageCurveConfig& config) {
  detail::validate_curve_config(config);
  return detail::run_curve(config, Ensemble::haar_pure, [&](int n_a, std::size_t s) {
    const PointSample sample = draw_point_sample(config, n_a, s);
    const SubsystemValues v = subsystem_values(sample.state, sample.part, config.order, config.base);
    return std::pair{v.entropy, v.purity};
  });
}

/// Classical analogue: flat-Dirichlet distributions on n bits, marginal on
/// the first n_a bits (or a random subset), Renyi/Shannon entropy of the marginal.
inline PageCurveResult classical_page_curve(const PageCurveConfig& config) {
  detail::validate_curve_config(config);
  return detail::run_curve(config, Ensemble::classical_flat, [&](int n_a, std::size_t s) {
    PhiloxStream rng(config.seed, detail::kClassicalStreamTag | detail::point_stream(n_a, s));
    const ClassicalState joint = sample_classical_uniform(config.n_qubits, rng);
    const Bipartition part =
        config.random_subsets ? random_subset(config.n_qubits, n_a, rng) : Bipartition::prefix(config.n_qubits, n_a);
    const ClassicalState marginal = classical_marginal(joint, part);
    const Spectrum spec = Spectrum::from_probabilities(marginal.probabilities());
    return std::pair{renyi_entropy(spec, config.order, config.base), purity(spec)};
  });
}

struct ConcentrationRow {
  int n_qubits = 0;
  int n_a = 0;
  EnsembleEstimate purity;  ///< spread is purity.std_dev()
};

/// Sample spread of the half-cut purity tr(rho_A^2), n_a = floor(n/2), for each n.
inline std::vector<ConcentrationRow> concentration_report(const std::vector<int>& n_list, std::size_t samples, std::uint64_t seed,
                                                          int workers = 1) {
  if (samples < 2) throw ValidationError("concentration_report: sample spread needs at least two samples");
  if (workers < 1) throw ValidationError("workers must be >= 1");
  for (int n : n_list) {
    if (n < 2 || n > 12) throw ValidationError("concentration_report: n = " + std::to_string(n) + " outside [2, 12]");
  }
  std::vector<ConcentrationRow> rows;
  for (int n : n_list) {
    const Bipartition part = Bipartition::prefix(n, n / 2);
    std::vector<double> values(samples);
    parallel_for(samples, workers, [&](std::size_t s) {
      PhiloxStream rng(seed, detail::kConcentrationStreamTag | (static_cast<std::uint64_t>(n) << 32) | s);
      values[s] = purity(reduced_density_smaller_side(sample_haar_pure(n, rng), part));
    });
    rows.push_back({n, n / 2, estimate_from_samples(values)});
  }
  return rows;
}

inline bool strictly_decreasing_spread(const std::vector<ConcentrationRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].purity.std_dev() < rows[i - 1].purity.std_dev())) return false;
  }
  return true;
}

}  // namespace pagelab
