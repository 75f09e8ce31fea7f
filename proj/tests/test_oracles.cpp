#include <gtest/gtest.h>

#include "qlab/oracles.hpp"

using namespace qlab;

TEST(OrderedOracle, RejectsNonMonotoneAndAllZero) {
  EXPECT_THROW(OrderedOracle({0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(OrderedOracle({1, 0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(OrderedOracle({0, 1, 1}));
}

TEST(OrderedOracle, FirstOneIndex) {
  EXPECT_EQ(f_of(OrderedOracle({0, 0, 1, 1})), 2);
  EXPECT_EQ(f_of(OrderedOracle({1, 1, 1, 1})), 0);
  EXPECT_EQ(f_of(OrderedOracle({0, 0, 0, 1})), 3);
}

TEST(OrderedOracle, AllInputsOnePerAnswer) {
  EXPECT_EQ(all_inputs(1), std::vector<OrderedOracle>{OrderedOracle({1})});
  EXPECT_EQ(all_inputs(2), (std::vector<OrderedOracle>{OrderedOracle({1, 1}), OrderedOracle({0, 1})}));
  for (int n = 1; n <= 20; ++n) {
    const auto xs = all_inputs(n);
    ASSERT_EQ(static_cast<int>(xs.size()), n);
    for (int f = 0; f < n; ++f) {
      EXPECT_EQ(xs[static_cast<std::size_t>(f)].f(), f);
      for (int i = 0; i < n; ++i) EXPECT_EQ(xs[static_cast<std::size_t>(f)].bit(i), i >= f ? 1 : 0);
    }
  }
}

TEST(OrderedOracle, JsonRoundTrip) {
  const OrderedOracle x = OrderedOracle::with_answer(7, 3);
  const nlohmann::json j = oracle_to_json(x);
  EXPECT_EQ(j.at("n"), 7);
  EXPECT_EQ(j.at("f"), 3);
  EXPECT_EQ(oracle_from_json(j), x);
}

TEST(PhaseOracle, FlipsOnOneBitsOnly) {
  const OrderedOracle x({0, 1});
  EXPECT_EQ(phase_oracle_apply(x, make_basis_state(schemas::kGeneric, {0, 1})).amplitude({0, 1}), Complex(-1.0));
  EXPECT_EQ(phase_oracle_apply(x, make_basis_state(schemas::kGeneric, {0, 0})).amplitude({0, 0}), Complex(1.0));
}

TEST(PhaseOracle, IndicesPastTheEndAreUnchanged) {
  const OrderedOracle x({1, 1});
  const PureState s = make_basis_state(schemas::kGeneric, {4, 9});
  EXPECT_EQ(phase_oracle_apply(x, s), s);
}

TEST(PhaseOracle, Involution) {
  const OrderedOracle x({0, 0, 1});
  const PureState s = superposition(schemas::kGeneric, {{{0, 0}, 0.6}, {{0, 2}, 0.8}});
  EXPECT_EQ(phase_oracle_apply(x, phase_oracle_apply(x, s)), s);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 0}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 2}), std::invalid_argument);
  const Permutation p({2, 0, 1});
  for (int i = 0; i < 3; ++i) EXPECT_EQ(p.inverse(p(i)), i);
}

TEST(ComparisonMatrix, SmallCases) {
  const ComparisonMatrix id = comparison_matrix(Permutation::identity(2));
  EXPECT_EQ(id(0, 1), 1);
  EXPECT_EQ(id(1, 0), 0);
  const ComparisonMatrix swap = comparison_matrix(Permutation({1, 0}));
  EXPECT_EQ(swap(0, 1), 0);
  EXPECT_EQ(swap(1, 0), 1);
}

TEST(ComparisonMatrix, AntisymmetricExhaustively) {
  for (int n = 1; n <= 5; ++n) {
    for (const Permutation& sigma : all_permutations(n)) {
      const ComparisonMatrix m = comparison_matrix(sigma);
      for (int i = 0; i < n; ++i) {
        EXPECT_EQ(m(i, i), 0);
        for (int j = 0; j < n; ++j)
          if (i != j) EXPECT_EQ(m(i, j) + m(j, i), 1);
      }
    }
  }
}

TEST(ComparisonOracle, PhasesFollowTheMatrix) {
  const Permutation id = Permutation::identity(2);
  EXPECT_EQ(comparison_oracle_apply(id, make_basis_state(schemas::kComparison, {0, 0, 1})).amplitude({0, 0, 1}),
            Complex(-1.0));
  EXPECT_EQ(comparison_oracle_apply(id, make_basis_state(schemas::kComparison, {0, 1, 0})).amplitude({0, 1, 0}),
            Complex(1.0));
  const PureState s = superposition(schemas::kComparison, {{{0, 0, 1}, 0.6}, {{0, 1, 0}, 0.8}});
  EXPECT_EQ(comparison_oracle_apply(id, comparison_oracle_apply(id, s)), s);
  EXPECT_THROW(comparison_oracle_apply(id, make_basis_state(schemas::kComparison, {0, 0, 2})), DomainError);
}

TEST(SigmaKd, CycleExamples) {
  EXPECT_EQ(sigma_kd(Permutation::identity(2), 0, 1), Permutation({1, 0}));
  EXPECT_EQ(sigma_kd(Permutation::identity(3), 0, 2), Permutation({1, 2, 0}));
  EXPECT_THROW(sigma_kd(Permutation::identity(3), 2, 1), std::out_of_range);
  EXPECT_THROW(sigma_kd(Permutation::identity(3), 0, 3), std::out_of_range);
  EXPECT_THROW(sigma_kd(Permutation::identity(3), 0, 0), std::out_of_range);
}

TEST(SigmaKd, InverseRelationExhaustively) {
  for (int n = 2; n <= 5; ++n) {
    for (const Permutation& sigma : all_permutations(n)) {
      for (int k = 0; k + 1 < n; ++k) {
        for (int d = 1; d <= n - 1 - k; ++d) {
          const Permutation tau = sigma_kd(sigma, k, d);
          EXPECT_EQ(sigma.inverse(k + d), tau.inverse(k));
          for (int i = 0; i < n; ++i) {
            if (i >= k && i < k + d) {
              EXPECT_EQ(sigma.inverse(i), tau.inverse(i + 1));
            } else if (i != k + d) {
              EXPECT_EQ(sigma.inverse(i), tau.inverse(i));
            }
          }
        }
      }
    }
  }
}

TEST(DiffEntries, SmallCase) {
  EXPECT_EQ(diff_entries(Permutation::identity(2), 0, 1), (std::set<IndexPair>{{0, 1}}));
}

TEST(DiffEntries, MatchesMatrixDifferenceExhaustively) {
  for (int n = 2; n <= 5; ++n) {
    for (const Permutation& sigma : all_permutations(n)) {
      for (int k = 0; k + 1 < n; ++k) {
        for (int d = 1; d <= n - 1 - k; ++d) {
          const auto entries = diff_entries(sigma, k, d);
          EXPECT_EQ(static_cast<int>(entries.size()), d);
          EXPECT_EQ(entries, matrix_difference(comparison_matrix(sigma), comparison_matrix(sigma_kd(sigma, k, d))));
        }
      }
    }
  }
}

TEST(Annotate, MarkerRange) {
  EXPECT_NO_THROW(annotate(Permutation::identity(3), 0));
  EXPECT_THROW(annotate(Permutation::identity(3), 2), std::out_of_range);
  EXPECT_THROW(annotate(Permutation::identity(3), -1), std::out_of_range);
}

TEST(Annotate, CountIsFactorialTimesMarkers) {
  std::size_t factorial = 1;
  for (int n = 2; n <= 5; ++n) {
    factorial *= static_cast<std::size_t>(n);
    EXPECT_EQ(all_annotated(n).size(), factorial * static_cast<std::size_t>(n - 1));
  }
}
