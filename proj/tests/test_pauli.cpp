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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pagelab {
namespace {

PureState bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(2, v);
}

Complex dense_expectation(const PureState& psi, const PauliString& g) {
  return psi.amplitudes().adjoint() * oracle::dense_pauli(g.to_string()) * psi.amplitudes();
}

TEST(PauliString, ParseAndLetters) {
  const PauliString g = PauliString::parse("XZI");
  EXPECT_EQ(g.n_qubits(), 3);
  EXPECT_EQ(g.letter(0), Pauli::X);
  EXPECT_EQ(g.letter(1), Pauli::Z);
  EXPECT_EQ(g.letter(2), Pauli::I);
  EXPECT_EQ(g.code(), (1U << 4) | (3U << 2));
  EXPECT_EQ(g.to_string(), "XZI");
  EXPECT_TRUE(PauliString(3, 0).is_identity());
  EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
  EXPECT_THROW(PauliString(2, 16), ValidationError);
}

TEST(PauliString, LocalityIsStructural) {
  const Bipartition part(3, {1});
  EXPECT_TRUE(PauliString::parse("IYI").is_local_to(part));
  EXPECT_FALSE(PauliString::parse("XYI").is_local_to(part));
  EXPECT_TRUE(PauliString::parse("XIZ").is_local_to(part, Side::B));
}

TEST(PauliExpectation, BasisStateExamples) {
  const PureState zero = PureState::basis(1, 0);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, PauliString::parse("Z")), 1.0);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, PauliString::parse("X")), 0.0);
  EXPECT_DOUBLE_EQ(pauli_expectation(PureState::basis(1, 1), PauliString::parse("Z")), -1.0);
}

TEST(PauliExpectation, MatchesDenseKroneckerOracle) {
  PhiloxStream rng(1, 0);
  const PureState psi = sample_haar_pure(3, rng);
  const PauliString xzi = PauliString::parse("XZI");
  EXPECT_NEAR(pauli_expectation(psi, xzi), dense_expectation(psi, xzi).real(), 1e-12);

  for (std::uint64_t code = 0; code < 64; ++code) {
    const PauliString g(3, code);
    const Complex fast = pauli_expectation_complex(psi, g);
    const Complex dense = dense_expectation(psi, g);
    EXPECT_NEAR(fast.real(), dense.real(), 1e-12) << g.to_string();
    EXPECT_NEAR(fast.imag(), 0.0, 1e-12) << g.to_string();
  }
}

TEST(PauliExpectation, DensityMatrixMatchesDenseTrace) {
  PhiloxStream rng(2, 0);
  const DensityMatrix rho = oracle::random_mixed(3, 4, rng);
  for (std::uint64_t code = 0; code < 64; ++code) {
    const PauliString g(3, code);
    EXPECT_NEAR(pauli_expectation(rho, g), (rho.entries() * oracle::dense_pauli(g.to_string())).trace().real(), 1e-12);
  }
}

TEST(PauliExpectation, MismatchThrows) {
  EXPECT_THROW(pauli_expectation(PureState::basis(2, 0), PauliString::parse("Z")), DimensionError);
  EXPECT_THROW(pauli_expectation(density_from_pure(PureState::basis(2, 0)), PauliString::parse("Z")), DimensionError);
}

TEST(PauliBasis, Orthogonality) {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    const double d = static_cast<double>(dimension_of(n));
    for (std::uint64_t j = 0; j < count; ++j) {
      const ComplexMatrix gj = oracle::dense_pauli(PauliString(n, j).to_string());
      for (std::uint64_t k = 0; k < count; ++k) {
        const Complex tr = (gj * oracle::dense_pauli(PauliString(n, k).to_string())).trace();
        EXPECT_NEAR(std::abs(tr - Complex(j == k ? d : 0.0, 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(PauliBasis, LocalStringCount) {
  for (int n = 1; n <= 6; ++n) {
    for (int n_a = 0; n_a <= n; ++n_a) {
      const Bipartition part = Bipartition::prefix(n, n_a);
      std::uint64_t local = 0;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) local += PauliString(n, code).is_local_to(part);
      EXPECT_EQ(local, std::uint64_t{1} << (2 * n_a));
    }
  }
}

TEST(PauliBasis, IdentityCoefficientIsOneOverD) {
  PhiloxStream rng(3, 0);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho = oracle::random_mixed(n, 3, rng);
    // xi_i = tr(rho g_i) / d
    EXPECT_NEAR(pauli_expectation(rho, PauliString(n, 0)) / static_cast<double>(rho.dim()), 1.0 / static_cast<double>(rho.dim()), 1e-15);
  }
}

TEST(Budget, TwoQubitTotalIsThree) {
  PhiloxStream rng(4, 0);
  for (int trial = 0; trial < 10; ++trial) {
    EXPECT_NEAR(predictability_budget(sample_haar_pure(2, rng), Bipartition(2, {0})).total, 3.0, 1e-12);
  }
}

TEST(Budget, ProductStateIsFullyLocal) {
  const PredictabilityBudget b = predictability_budget(PureState::basis(2, 0), Bipartition(2, {0}));
  EXPECT_NEAR(b.local_a, 1.0, 1e-15);
  EXPECT_NEAR(b.local_a, static_cast<double>(b.d_a) - 1.0, 1e-15);
  EXPECT_NEAR(b.total, 3.0, 1e-15);
}

TEST(Budget, BellStateIsFullyNonlocal) {
  const PredictabilityBudget b = predictability_budget(bell(), Bipartition(2, {0}));
  EXPECT_NEAR(b.local_a, 0.0, 1e-15);
  EXPECT_NEAR(b.nonlocal, 3.0, 1e-14);
  EXPECT_NEAR(purity_from_budget(b, BudgetSide::A), 0.5, 1e-15);
}

TEST(Budget, PurityFromBudget) {
  EXPECT_NEAR(purity_from_budget(predictability_budget(PureState::basis(3, 5), Bipartition(3, {1})), BudgetSide::total), 1.0, 1e-14);
  PhiloxStream rng(5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi = sample_haar_pure(4, rng);
    const Bipartition part(4, {0, 1});
    EXPECT_NEAR(purity_from_budget(predictability_budget(psi, part), BudgetSide::A), purity(reduced_density(psi, part, Side::A)), 1e-9);
  }
}

TEST(Budget, PureStateIdentitiesHoldExhaustively) {
  PhiloxStream rng(6, 0);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const PureState psi = sample_haar_pure(n, rng);
      const Bipartition part = Bipartition::prefix(n, trial % (n + 1));
      const PredictabilityBudget b = predictability_budget(psi, part);
      EXPECT_NEAR(b.total, static_cast<double>(b.d) - 1.0, 1e-8);
      EXPECT_NEAR(b.local_a + b.nonlocal, b.total, 1e-9);
      EXPECT_GE(b.local_a, 0.0);
      EXPECT_GE(b.nonlocal, -1e-12);
    }
  }
}

TEST(Budget, MixedStatePurityIdentity) {
  PhiloxStream rng(7, 0);
  for (int n = 1; n <= 5; ++n) {
    const DensityMatrix rho = oracle::random_mixed(n, 3, rng);
    const PredictabilityBudget b = predictability_budget(rho, Bipartition::prefix(n, 0));
    EXPECT_NEAR(purity_from_budget(b, BudgetSide::total), purity(rho), 1e-9);
  }
}

TEST(Budget, WorkerCountDoesNotChangeBits) {
  PhiloxStream rng(8, 0);
  const PureState psi = sample_haar_pure(6, rng);
  const Bipartition part(6, {1, 4});
  const PredictabilityBudget one = predictability_budget(psi, part, 1);
  const PredictabilityBudget three = predictability_budget(psi, part, 3);
  EXPECT_EQ(one.total, three.total);
  EXPECT_EQ(one.local_a, three.local_a);
}

TEST(Budget, ExhaustiveModeRefusesLargeRegisters) {
  PhiloxStream rng(9, 0);
  const PureState psi = sample_haar_pure(9, rng);
  EXPECT_THROW(predictability_budget(psi, Bipartition(9, {0})), ResourceError);
}

TEST(Budget, SampledModeEstimatesTheBudget) {
  PhiloxStream rng(10, 0);
  const PureState psi = sample_haar_pure(10, rng);
  const Bipartition part(10, {0, 1, 2});
  PhiloxStream srng(10, 1);
  const SampledBudget b = sampled_predictability_budget(psi, part, 4096, srng);
  EXPECT_NEAR(b.total.mean, 1023.0, 3 * b.total.std_error);
  const double local_exact = purity(reduced_density(psi, part, Side::A)) * 8.0 - 1.0;
  EXPECT_NEAR(b.local_a.mean, local_exact, 3 * b.local_a.std_error + 1e-9);
}

TEST(ExpectedPredictability, ClosedForms) {
  EXPECT_DOUBLE_EQ(expected_predictability(2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(expected_predictability(4), 1.0 / 5.0);
  EXPECT_THROW(expected_predictability(3), ValidationError);
  EXPECT_THROW(expected_predictability(1), ValidationError);
  for (std::uint64_t d : {2U, 4U, 16U, 256U}) {
    EXPECT_NEAR(expected_local_predictability(d, d), static_cast<double>(d) - 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(expected_local_predictability(2, 4), 0.6);
  EXPECT_NEAR(expected_local_predictability(2, 16), 3.0 * 15.0 / 255.0, 1e-15);
  EXPECT_THROW(expected_local_predictability(8, 4), ValidationError);
}

TEST(ExpectedPredictability, MonteCarloSingleString) {
  PhiloxStream rng(11, 0);
  const PauliString g = PauliString::parse("XY");
  std::vector<double> values(10000);
  for (auto& v : values) {
    const double e = pauli_expectation(sample_haar_pure(2, rng), g);
    v = e * e;
  }
  const auto est = estimate_from_samples(values);
  EXPECT_NEAR(est.mean, 0.2, 3 * est.std_error);
}

TEST(ExpectedPredictability, MonteCarloLocalShare) {
  PhiloxStream rng(12, 0);
  const Bipartition part(4, {0});
  std::vector<double> values(10000);
  for (auto& v : values) v = predictability_budget(sample_haar_pure(4, rng), part).local_a;
  const auto est = estimate_from_samples(values);
  EXPECT_NEAR(est.mean, expected_local_predictability(2, 16), 3 * est.std_error);
  EXPECT_NEAR(expected_local_predictability(2, 16), 0.17647, 1e-5);
}

}  // namespace
}  // namespace pagelab
