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

#include "pagelab/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pagelab {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Sample mean, unbiased sample variance and standard error of a Monte Carlo observable.
struct EnsembleEstimate {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t count = 0;
  double std_error = 0.0;

  double std_dev() const { return std::sqrt(variance); }
};

/// Two-pass estimate over stored samples; summation order is the sample order.
inline EnsembleEstimate estimate_from_samples(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("estimate_from_samples: variance needs at least two samples");
  CompensatedSum sum;
  for (double x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  const double mean = sum.value() / n;

  CompensatedSum sq;
  for (double x : samples) sq += (x - mean) * (x - mean);
  const double variance = std::max(0.0, sq.value() / (n - 1.0));
  return {mean, variance, samples.size(), std::sqrt(variance / n)};
}

/// Streaming (count, sum, sum of squares) triple for map-reduce over workers.
/// Partial accumulators merge associatively up to compensated rounding.
class Accumulator {
 public:
  void add(double x) {
    ++count_;
    sum_ += x;
    sum_sq_ += x * x;
  }

  void merge(const Accumulator& other) {
    count_ += other.count_;
    sum_.merge(other.sum_);
    sum_sq_.merge(other.sum_sq_);
  }

  std::size_t count() const { return count_; }

  EnsembleEstimate estimate() const {
    if (count_ < 2) throw ValidationError("Accumulator: variance needs at least two samples");
    const double n = static_cast<double>(count_);
    const double mean = sum_.value() / n;
    const double variance = std::max(0.0, (sum_sq_.value() - n * mean * mean) / (n - 1.0));
    return {mean, variance, count_, std::sqrt(variance / n)};
  }

 private:
  std::size_t count_ = 0;
  CompensatedSum sum_;
  CompensatedSum sum_sq_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_1(x) - F_2(x)|.
inline double ks_statistic(std::vector<double> first, std::vector<double> second) {
  if (first.empty() || second.empty()) throw ValidationError("ks_statistic: empty sample");
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  const double n1 = static_cast<double>(first.size());
  const double n2 = static_cast<double>(second.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < first.size() && j < second.size()) {
    const double x = std::min(first[i], second[j]);
    while (i < first.size() && first[i] <= x) ++i;
    while (j < second.size() && second[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  return d;
}

/// Asymptotic critical value c(alpha) sqrt((n1 + n2) / (n1 n2)), c(alpha) = sqrt(-ln(alpha / 2) / 2).
inline double ks_critical_value(std::size_t n1, std::size_t n2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("ks_critical_value: alpha must lie in (0, 1)");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c * std::sqrt((a + b) / (a * b));
}

}  // namespace pagelab
