#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qlab/dense.hpp"
#include "qlab/state.hpp"

using namespace qlab;

namespace {

const double kHalfRoot = std::numbers::sqrt2 / 2.0;

LinearOp identity_op() {
  return LinearOp("id", [](std::span<const Register>) { return true; },
                  [](std::span<const Register> l) { return LinearOp::Image{{Registers(l.begin(), l.end()), 1.0}}; });
}

LinearOp negate_op() {
  return LinearOp("neg", [](std::span<const Register>) { return true; },
                  [](std::span<const Register> l) { return LinearOp::Image{{Registers(l.begin(), l.end()), -1.0}}; });
}

// |0;0> <-> a, |0;1> <-> b
LinearOp hadamard_op() {
  return LinearOp(
      "H", [](std::span<const Register> l) { return l[0] == 0 && (l[1] == 0 || l[1] == 1); },
      [](std::span<const Register> l) {
        const double sign = l[1] == 0 ? 1.0 : -1.0;
        return LinearOp::Image{{{0, 0}, kHalfRoot}, {{0, 1}, sign * kHalfRoot}};
      });
}

PureState plus() { return superposition(schemas::kGeneric, {{{0, 0}, kHalfRoot}, {{0, 1}, kHalfRoot}}); }
PureState minus() { return superposition(schemas::kGeneric, {{{0, 0}, kHalfRoot}, {{0, 1}, -kHalfRoot}}); }

}  // namespace

TEST(BasisState, HasUnitAmplitudeOnItsLabel) {
  const PureState s = make_basis_state(schemas::kGeneric, {0, 0});
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.amplitude({0, 0}), Complex(1.0));
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
}

TEST(BasisState, DistinctLabelsAreOrthogonal) {
  EXPECT_EQ(inner_product(make_basis_state(schemas::kGeneric, {0, 0}), make_basis_state(schemas::kGeneric, {0, 1})),
            Complex(0.0));
}

TEST(BasisState, RejectsOutOfRangeRegisters) {
  EXPECT_THROW(make_basis_state(schemas::kGeneric, {-1, 0}), SchemaError);
  EXPECT_THROW(make_basis_state(schemas::kGeneric, {0}), SchemaError);
  EXPECT_THROW(make_basis_state(12345, {0}), SchemaError);
}

TEST(ApplyOp, IdentityLeavesStateUnchanged) {
  const PureState s = plus();
  EXPECT_EQ(apply_op(identity_op(), s), s);
}

TEST(ApplyOp, PhaseTwiceIsIdentity) {
  const PureState s = minus();
  const PureState back = apply_op(negate_op(), apply_op(negate_op(), s));
  EXPECT_LE(distance(back, s), 1e-15);
}

TEST(ApplyOp, HadamardOverlapWithStart) {
  const PureState a = make_basis_state(schemas::kGeneric, {0, 0});
  const Complex overlap = inner_product(a, apply_op(hadamard_op(), a));
  EXPECT_NEAR(overlap.real(), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(overlap.imag(), 0.0, 1e-12);
}

TEST(ApplyOp, DomainErrorNamesTheLabel) {
  const PureState s = make_basis_state(schemas::kGeneric, {0, 7});
  try {
    apply_op(hadamard_op(), s);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
  }
}

TEST(ApplyOp, NormChangingRuleIsRejected) {
  const LinearOp doubling("double", [](std::span<const Register>) { return true; },
                          [](std::span<const Register> l) { return LinearOp::Image{{Registers(l.begin(), l.end()), 2.0}}; });
  EXPECT_THROW(apply_op(doubling, plus()), IsometryError);
}

TEST(ApplyOp, PrunesNumericalDust) {
  const PureState s = superposition(schemas::kGeneric, {{{0, 0}, 1.0}, {{0, 1}, 1e-16}});
  EXPECT_EQ(s.size(), 1u);
}

TEST(InnerProduct, NormalizedStateHasUnitSelfOverlap) {
  EXPECT_NEAR(inner_product(plus(), plus()).real(), 1.0, 1e-12);
}

TEST(InnerProduct, PlusAndMinusAreOrthogonal) { EXPECT_NEAR(std::abs(inner_product(plus(), minus())), 0.0, 1e-15); }

TEST(InnerProduct, ConjugateLinearInFirstArgument) {
  const PureState a = Complex(0.0, 1.0) * make_basis_state(schemas::kGeneric, {0, 0});
  const PureState b = make_basis_state(schemas::kGeneric, {0, 0});
  EXPECT_EQ(inner_product(a, b), Complex(0.0, -1.0));
}

TEST(InnerProduct, SchemaMismatchThrows) {
  EXPECT_THROW(inner_product(make_basis_state(schemas::kGeneric, {0, 0}), make_basis_state(schemas::kComparison, {0, 0, 1})),
               SchemaError);
}

TEST(ProjectQueryIndex, KeepsMatchingLabelOnly) {
  const PureState s = make_basis_state(schemas::kGeneric, {0, 1});
  EXPECT_EQ(project_query_index(s, 1), s);
  EXPECT_TRUE(project_query_index(s, 0).empty());
  EXPECT_TRUE(project_query_index(s, -1).empty());
}

TEST(ProjectQueryIndex, IsIdempotentAndComplete) {
  const PureState s = superposition(schemas::kGeneric, {{{0, 0}, 0.6}, {{1, 2}, 0.48}, {{2, 2}, Complex(0.0, 0.64)}});
  double total = 0.0;
  for (Register i = 0; i < 3; ++i) {
    const PureState p = project_query_index(s, i);
    EXPECT_EQ(project_query_index(p, i), p);
    total += p.squared_norm();
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ProjectComparisonPair, MatchesEitherOrder) {
  const PureState s = superposition(schemas::kComparison, {{{0, 0, 1}, kHalfRoot}, {{0, 1, 0}, kHalfRoot}});
  EXPECT_EQ(project_comparison_pair(s, 0, 1), s);
  EXPECT_EQ(project_comparison_pair(project_comparison_pair(s, 0, 1), 0, 1), project_comparison_pair(s, 0, 1));
  EXPECT_TRUE(project_comparison_pair(make_basis_state(schemas::kComparison, {0, 0, 2}), 0, 1).empty());
  EXPECT_THROW(project_comparison_pair(s, 1, 1), std::invalid_argument);
}

TEST(MeasureRegister, BasisStateIsPointMass) {
  const MeasurementResult m = measure_register(make_basis_state(schemas::kGeneric, {3, 4}), 1);
  EXPECT_DOUBLE_EQ(m.probability(4), 1.0);
  EXPECT_DOUBLE_EQ(m.total(), 1.0);
}

TEST(MeasureRegister, UniformPairSplitsEvenly) {
  const MeasurementResult m = measure_register(plus(), 1);
  EXPECT_NEAR(m.probability(0), 0.5, 1e-12);
  EXPECT_NEAR(m.probability(1), 0.5, 1e-12);
}

TEST(StateJson, RoundTrips) {
  const PureState s = superposition(schemas::kGeneric, {{{0, 0}, Complex(0.6, 0.0)}, {{5, 2}, Complex(0.0, -0.8)}});
  const nlohmann::json j = state_to_json(s);
  EXPECT_EQ(j.at("schema"), schemas::kGeneric);
  EXPECT_EQ(state_from_json(j), s);
}

TEST(Dense, RandomUnitaryIsUnitaryAndDenseOpIsIsometry) {
  std::mt19937_64 rng(3);
  const DenseMatrix<Complex> u = random_unitary<Complex>(8, rng);
  EXPECT_LE((u.adjoint() * u - DenseMatrix<Complex>::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
  std::vector<Registers> basis;
  for (Register i = 0; i < 8; ++i) basis.push_back({0, i});
  const LinearOp op = dense_op("U", basis, u);
  EXPECT_LE(isometry_defect(op, basis), 1e-12);
  const DenseMatrix<Complex> g = gram_matrix(op, basis);
  EXPECT_LE((g - DenseMatrix<Complex>::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dense, CauchySchwarzOnRandomStates) {
  std::mt19937_64 rng(11);
  std::vector<Registers> basis;
  for (Register i = 0; i < 6; ++i) basis.push_back({0, i});
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix<Complex> u = random_unitary<Complex>(6, rng);
    const LinearOp op = dense_op("U", basis, u);
    const PureState a = apply_op(op, make_basis_state(schemas::kGeneric, {0, 0}));
    const PureState b = apply_op(op, apply_op(op, a));
    EXPECT_LE(std::abs(inner_product(a, b)), a.norm() * b.norm() + 1e-12);
    EXPECT_NEAR(b.norm(), 1.0, 1e-9);
  }
}
