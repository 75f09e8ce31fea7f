#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qlab/adversary.hpp"
#include "qlab/comparison_algorithms.hpp"

using namespace qlab;

TEST(EpsPrime, ClosedForms) {
  EXPECT_DOUBLE_EQ(eps_prime(0.0), 0.0);
  EXPECT_DOUBLE_EQ(eps_prime(0.5), 1.0);
  EXPECT_NEAR(eps_prime(0.1), 0.6, 1e-15);
  EXPECT_THROW(eps_prime(0.6), std::out_of_range);
  EXPECT_THROW(eps_prime(-0.1), std::out_of_range);
}

TEST(Harmonic, SmallValues) {
  EXPECT_EQ(harmonic(1), Rational(1));
  EXPECT_EQ(harmonic(2), Rational(3, 2));
  EXPECT_EQ(harmonic(4), Rational(25, 12));
  EXPECT_THROW(harmonic(0), std::invalid_argument);
}

TEST(WeightSearch, Examples) {
  const auto x = [](int f) { return OrderedOracle::with_answer(5, f); };
  EXPECT_EQ(weight_search(x(0), x(3)), Rational(1, 3));
  EXPECT_EQ(weight_search(x(2), x(2)), Rational(0));
  EXPECT_EQ(weight_search(x(2), x(1)), Rational(0));
}

TEST(WeightSort, Examples) {
  EXPECT_EQ(weight_sort(Permutation::identity(2), Permutation({1, 0})), Rational(1));
  EXPECT_EQ(weight_sort(Permutation::identity(3), Permutation::identity(3)), Rational(0));
  EXPECT_EQ(weight_sort(Permutation::identity(3), Permutation({1, 2, 0})), Rational(1, 2));
}

TEST(WeightEd, Examples) {
  EXPECT_EQ(weight_ed(Permutation::identity(2), annotate(Permutation({1, 0}), 0)), Rational(1));
  // sigma^(0,1) of the identity on three elements carries marker 0, not 1
  EXPECT_EQ(weight_ed(Permutation::identity(3), annotate(Permutation({1, 0, 2}), 1)), Rational(0));
  EXPECT_EQ(weight_ed(Permutation::identity(3), annotate(Permutation({1, 0, 2}), 0)), Rational(1));
}

TEST(TotalWeight, SmallClosedForms) {
  EXPECT_EQ(total_weight(Problem::Search, 2), Rational(1));
  EXPECT_EQ(total_weight(Problem::Search, 3), Rational(5, 2));
  EXPECT_EQ(total_weight(Problem::Sort, 2), Rational(2));
  EXPECT_EQ(total_weight(Problem::ElementDistinctness, 3), Rational(15));
}

TEST(TotalWeight, MatchesEnumeration) {
  for (int n = 2; n <= 64; ++n) EXPECT_EQ(make_weight_scheme(Problem::Search, n).total(), total_weight(Problem::Search, n));
  for (int n = 2; n <= 5; ++n) {
    EXPECT_EQ(make_weight_scheme(Problem::Sort, n).total(), total_weight(Problem::Sort, n));
    EXPECT_EQ(make_weight_scheme(Problem::ElementDistinctness, n).total(), total_weight(Problem::ElementDistinctness, n));
  }
}

TEST(WeightScheme, NonzeroOnlyOnDifferentAnswers) {
  const WeightScheme s = make_weight_scheme(Problem::Sort, 4);
  const auto perms = all_permutations(4);
  for (const WeightedPair& p : s.pairs) {
    EXPECT_GT(p.weight, 0);
    EXPECT_NE(perms[p.left], perms[p.right]);
  }
}

TEST(ProgressW, InitialEnsembleGivesTotalWeight) {
  for (int n = 2; n <= 64; ++n) {
    const WeightScheme s = make_weight_scheme(Problem::Search, n);
    const std::vector<PureState> same(static_cast<std::size_t>(n), make_basis_state(schemas::kGeneric, {0, 0}));
    EXPECT_EQ(progress_W_exact(s, same), total_weight(Problem::Search, n));
    EXPECT_NEAR(progress_W(s, same).real(), to_double(total_weight(Problem::Search, n)), 1e-9);
  }
  const WeightScheme s2 = make_weight_scheme(Problem::Search, 2);
  EXPECT_NEAR(progress_W(s2, {make_basis_state(0, {0, 0}), make_basis_state(0, {0, 0})}).real(), 1.0, 1e-15);
}

TEST(ProgressW, MissingInputThrows) {
  const WeightScheme s = make_weight_scheme(Problem::Search, 4);
  EXPECT_THROW(progress_W(s, std::vector<PureState>(3, make_basis_state(0, {0, 0}))), IncompleteEnsembleError);
}

TEST(ProgressTrace, ComplexImbalanceIsReported) {
  const WeightScheme s = make_weight_scheme(Problem::Search, 2);
  const PureState a = make_basis_state(0, {0, 0});
  const PureState b = Complex(0.0, 1.0) * a;
  EXPECT_THROW(make_progress_trace(s, {{a, a}, {a, b}}), ProgressError);
}

TEST(ProgressTrace, CsvHeaderAndLength) {
  const WeightScheme s = make_weight_scheme(Problem::Search, 2);
  const PureState a = make_basis_state(0, {0, 0});
  const ProgressTrace t = make_progress_trace(s, {{a, a}, {a, -1.0 * a}});
  ASSERT_EQ(t.w.size(), 2u);
  EXPECT_EQ(t.delta.size(), 1u);
  EXPECT_NEAR(t.delta[0], 2.0, 1e-15);
  EXPECT_EQ(t.to_csv().substr(0, 25), "step,W,delta,bound_pi_N\n0");
}

TEST(StepDeltaBound, ZeroWithoutAmplitudeOnDifferingIndices) {
  const PureState a = make_basis_state(0, {0, 0});
  EXPECT_DOUBLE_EQ(step_delta_bound(a, a, std::vector<Register>{1, 2}), 0.0);
}

TEST(StepDeltaBound, SignFlipReachesTwo) {
  const OrderedOracle x({0, 1});
  const OrderedOracle y({1, 1});
  const PureState psi = make_basis_state(0, {0, 0});
  EXPECT_DOUBLE_EQ(step_delta_bound(psi, psi, std::vector<Register>{0}), 2.0);
  const Complex before = inner_product(psi, psi);
  const Complex after = inner_product(phase_oracle_apply(x, psi), phase_oracle_apply(y, psi));
  EXPECT_NEAR(std::abs(before - after), 2.0, 1e-15);
}

TEST(StepDeltaBound, RandomTrialsHold) {
  const Lemma2Outcome small = run_lemma2_trials(100, 8, 8);
  EXPECT_EQ(small.trials, 100);
  EXPECT_EQ(small.violations, 0);
  EXPECT_LE(small.worst_slack, 1e-9);
}

TEST(StepBound, Values) {
  EXPECT_NEAR(step_bound(Problem::Search, 8), 8 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(step_bound(Problem::Sort, 3), 12 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(step_bound(Problem::ElementDistinctness, 4), 48 * std::numbers::pi * 2.0, 1e-12);
}

TEST(BMatrix, Entries) {
  EXPECT_EQ(b_entry(1, 1, 1), Rational(1));
  EXPECT_EQ(b_entry(2, 1, 2), Rational(1, 2));
  EXPECT_EQ(b_entry(2, 2, 2), Rational(0));
  EXPECT_EQ(b_entry(3, 1, 3), Rational(1, 3));
  EXPECT_EQ(b_entry(3, 3, 1), Rational(1, 3));
  EXPECT_EQ(b_entry(3, 3, 2), Rational(0));
  EXPECT_EQ(hilbert_entry(3, 2), Rational(1, 4));
  const auto m = b_matrix(3).dense();
  EXPECT_EQ(m, m.transpose());
  EXPECT_GE(m.minCoeff(), 0.0);
}

TEST(SpectralNorm, SmallClosedForms) {
  EXPECT_NEAR(spectral_norm(b_matrix(1), 1e-14).norm, 1.0, 1e-12);
  EXPECT_NEAR(spectral_norm(b_matrix(2), 1e-14).norm, (1.0 + std::sqrt(2.0)) / 2.0, 1e-9);
}

TEST(SpectralNorm, AgreesWithEigenSolver) {
  for (int n : {3, 10, 40, 100}) {
    const auto dense = b_matrix(n).dense();
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<double>> es(dense);
    const SpectralResult r = spectral_norm(b_matrix(n), 1e-13);
    EXPECT_NEAR(r.norm, es.eigenvalues().cwiseAbs().maxCoeff(), 1e-9) << "N=" << n;
    EXPECT_GE(r.upper_bound, r.norm - 1e-12);
  }
}

TEST(SpectralNorm, HilbertRuleExceedsTruncation) {
  SpectralMatrix h{20, SpectralRule::Hilbert};
  EXPECT_GT(spectral_norm(h, 1e-12).norm, spectral_norm(b_matrix(20), 1e-12).norm);
  EXPECT_LT(spectral_norm(h, 1e-12).norm, std::numbers::pi);
}

TEST(TheoremBound, Examples) {
  EXPECT_NEAR(theorem_bound(Problem::Search, 2, 0.0).bound, 1.0 / (2.0 * std::numbers::pi), 1e-12);
  for (Problem p : {Problem::Search, Problem::Sort, Problem::ElementDistinctness})
    EXPECT_DOUBLE_EQ(theorem_bound(p, 16, 0.5).bound, 0.0);
  const double ratio = theorem_bound(Problem::Search, 1 << 20, 0.0).bound / 20.0;
  EXPECT_NEAR(ratio, 0.220, 0.022);
  EXPECT_THROW(theorem_bound(Problem::Search, 1, 0.0), std::invalid_argument);
}

TEST(BoundReport, JsonRoundTrip) {
  const BoundReport b = theorem_bound(Problem::Sort, 10, 0.1);
  const nlohmann::json j = b.to_json();
  EXPECT_EQ(j.at("v"), 1);
  EXPECT_EQ(BoundReport::from_json(nlohmann::json::parse(j.dump())), b);
}

TEST(Problem, ParsesNames) {
  EXPECT_EQ(parse_problem("search"), Problem::Search);
  EXPECT_EQ(parse_problem("sort"), Problem::Sort);
  EXPECT_EQ(parse_problem("ed"), Problem::ElementDistinctness);
  EXPECT_THROW(parse_problem("knapsack"), std::invalid_argument);
}

TEST(ComparisonAlgorithms, InsertionSortRecoversOrder) {
  for (int n = 2; n <= 4; ++n) {
    for (const Permutation& sigma : all_permutations(n)) {
      const ComparisonRun run = run_insertion_sort(sigma);
      EXPECT_EQ(static_cast<int>(run.snapshots.size()), insertion_sort_queries(n) + 1);
      const std::vector<int> order = insertion_sort_result(run.final_state, n);
      for (int rank = 0; rank < n; ++rank) EXPECT_EQ(sigma(order[static_cast<std::size_t>(rank)]), rank);
    }
  }
  EXPECT_EQ(insertion_sort_queries(4), 5);
}

TEST(ComparisonAlgorithms, TranscriptEncodingRoundTrips) {
  const std::vector<int> t{1, 0, 0, 1, 1};
  EXPECT_EQ(decode_transcript(encode_transcript(t)), t);
  EXPECT_EQ(encode_transcript({}), 1);
}

TEST(ComparisonAlgorithms, TracesRespectLemmaBounds) {
  for (int n = 2; n <= 4; ++n) {
    for (Problem p : {Problem::Sort, Problem::ElementDistinctness}) {
      const WeightScheme scheme = make_weight_scheme(p, n);
      const ProgressTrace exact =
          make_progress_trace(scheme, permutation_snapshots(n, [](const Permutation& s) { return run_insertion_sort(s); }));
      EXPECT_TRUE(exact.steps_within_bound());
      EXPECT_NEAR(exact.w.front().real(), to_double(total_weight(p, n)), 1e-9);
      EXPECT_LE(std::abs(exact.w.back()), 1e-9);
      const ProgressTrace random = make_progress_trace(
          scheme, permutation_snapshots(n, [](const Permutation& s) { return run_random_comparison(s, 5, 17); }));
      EXPECT_TRUE(random.steps_within_bound());
    }
  }
}
