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

#include "pagelab/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

namespace pagelab {
namespace {

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  EXPECT_EQ(s.value(), 2.0);
}

TEST(CompensatedSum, ManySmallTerms) {
  CompensatedSum s;
  for (int i = 0; i < 1000000; ++i) s += 0.1;
  EXPECT_NEAR(s.value(), 100000.0, 1e-9);
}

TEST(Estimate, HandComputed) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const EnsembleEstimate e = estimate_from_samples(x);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_DOUBLE_EQ(e.variance, 5.0 / 3.0);
  EXPECT_EQ(e.count, 4U);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(5.0 / 12.0));
}

TEST(Estimate, NeedsTwoSamples) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(estimate_from_samples(one), ValidationError);
  Accumulator acc;
  acc.add(1.0);
  EXPECT_THROW(acc.estimate(), ValidationError);
}

TEST(Accumulator, MergeMatchesSinglePass) {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i)) + 0.3;
  Accumulator whole;
  Accumulator left;
  Accumulator right;
  for (std::size_t i = 0; i < x.size(); ++i) {
    whole.add(x[i]);
    (i < 377 ? left : right).add(x[i]);
  }
  Accumulator merged = right;
  merged.merge(left);
  EXPECT_NEAR(merged.estimate().mean, whole.estimate().mean, 1e-12);
  EXPECT_NEAR(merged.estimate().variance, whole.estimate().variance, 1e-12);
  EXPECT_NEAR(whole.estimate().mean, estimate_from_samples(x).mean, 1e-12);
  EXPECT_NEAR(whole.estimate().variance, estimate_from_samples(x).variance, 1e-12);
  EXPECT_EQ(merged.count(), x.size());
}

TEST(KolmogorovSmirnov, Statistic) {
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2}, {3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 3}, {2, 4}), 0.5);
  EXPECT_THROW(ks_statistic({}, {1.0}), ValidationError);
}

TEST(KolmogorovSmirnov, CriticalValue) {
  // c(0.05) = 1.3581
  EXPECT_NEAR(ks_critical_value(100, 100, 0.05), 1.3581 * std::sqrt(0.02), 1e-4);
  EXPECT_NEAR(ks_critical_value(10000, 10000, 0.01), 1.6276 * std::sqrt(2e-4), 1e-4);
  EXPECT_THROW(ks_critical_value(10, 10, 0.0), ValidationError);
}

}  // namespace
}  // namespace pagelab
