#include "nst/solvers/nst.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "nst/core/operator.hpp"
#include "nst/probgen/generate.hpp"
#include "nst/solvers/adaptive.hpp"
#include "nst/solvers/baselines.hpp"
#include "test_util.hpp"

namespace nst {
namespace {

using testutil::expect_vec_near;
using testutil::gaussian_matrix;
using testutil::operator_of;
using testutil::parseval_frame;

// Hand-solved single-row family: A = [2 1], b = [2]. The unique 1-sparse
// solution is [1, 0]; the minimum-norm feasible point is [0.8, 0.4]; one
// tuning step from u = [0.8, 0] lands on [0.96, 0.08]; plain thresholding
// contracts the error by exactly 0.2 per pass while every feedback variant
// recovers [1, 0] in a single pass.
MeasurementOperator tiny_op() { return operator_of(1, 2, {2.0, 1.0}); }

const Vector kTinyRhs = {2.0};

TEST(NstStepTest, MatchesHandComputedValues) {
  const auto op = tiny_op();
  const Vector x0 = initial_iterate(op, kTinyRhs);
  expect_vec_near(x0, {0.8, 0.4}, 1e-14);

  const Vector u = {0.8, 0.0};
  expect_vec_near(nst_step(op, kTinyRhs, u, x0), {0.96, 0.08}, 1e-14);
}

TEST(NstStepTest, OutputIsFeasibleAndFixedPointOnFeasibleInput) {
  const auto op = MeasurementOperator::build(gaussian_matrix(4, 9, 11));
  CounterRng rng(5);
  Vector b(4), u(9), x(9);
  for (double& v : b) v = rng.next_gaussian();
  for (double& v : u) v = rng.next_gaussian();
  x = op.apply_pinv(b);

  const Vector stepped = nst_step(op, b, u, x);
  expect_vec_near(op.apply(stepped), b, 1e-10);
  // A feasible point is untouched by a further step from itself.
  expect_vec_near(nst_step(op, b, stepped, stepped), stepped, 1e-12);
}

TEST(NstStepTest, ResultIndependentOfWhichFeasiblePointIsUsed) {
  const auto op = MeasurementOperator::build(gaussian_matrix(3, 7, 21));
  CounterRng rng(6);
  Vector b(3), u(7), kernel_shift(7);
  for (double& v : b) v = rng.next_gaussian();
  for (double& v : u) v = rng.next_gaussian();
  for (double& v : kernel_shift) v = rng.next_gaussian();

  const Vector x1 = op.apply_pinv(b);
  // A second feasible point: shift x1 along the kernel of the operator.
  Vector x2 = project_nullspace(op, kernel_shift);
  for (std::size_t i = 0; i < x2.size(); ++i) x2[i] += x1[i];

  expect_vec_near(nst_step(op, b, u, x1), nst_step(op, b, u, x2), 1e-10);
}

TEST(NstStepTest, ValidatesDimensions) {
  const auto op = tiny_op();
  EXPECT_THROW(nst_step(op, {1.0, 2.0}, {1.0, 0.0}, {1.0, 0.0}), DimensionMismatchError);
  EXPECT_THROW(nst_step(op, kTinyRhs, {1.0}, {1.0}), DimensionMismatchError);
  EXPECT_THROW(nst_step(op, kTinyRhs, {1.0, 0.0}, {1.0}), DimensionMismatchError);
}

TEST(HardThresholdSolverTest, ContractsErrorByExactFactorOnTinyFamily) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.eps1 = 1e-5;
  cfg.eps2 = 1e-12;
  cfg.trace = true;
  const auto result = solve_nst_ht(tiny_op(), kTinyRhs, cfg);

  EXPECT_EQ(result.termination, Termination::kResidualMet);
  ASSERT_GE(result.trace.size(), 3u);
  ASSERT_EQ(static_cast<int>(result.trace.size()), result.iterations);
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    EXPECT_EQ(result.trace[k].iter, static_cast<int>(k));
    // Relative residual after pass k is exactly 0.2^{k+1}.
    EXPECT_NEAR(result.trace[k].residual_rel, std::pow(0.2, k + 1), 1e-12);
  }
  // The approximation converges to the sparse solution.
  EXPECT_NEAR(result.u[0], 1.0, 1e-4);
  EXPECT_NEAR(result.u[1], 0.0, 1e-14);
}

TEST(FeedbackSolverTest, RecoversTinyFamilyInOnePass) {
  SolverConfig cfg;
  cfg.s = 1;
  const auto result = solve_nst_ht_fb(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  EXPECT_EQ(result.iterations, 1);
  EXPECT_EQ(result.residual_rel, 0.0);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-14);
}

TEST(ScaledFeedbackSolverTest, FullScaleEqualsFeedbackOnTinyFamily) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.lambda = 0.25;  // 1 / ||A_T* A_T|| for the selected column [2]
  const auto result = solve_nst_ht_subfb(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  EXPECT_EQ(result.iterations, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-14);
}

TEST(ScaledFeedbackSolverTest, SpectralModeComputesAdmissibleScale) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.lambda = 123.0;  // must be ignored in spectral mode
  cfg.lambda_spectral = true;
  const auto result = solve_nst_ht_subfb(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.iterations, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-10);
}

TEST(ScaledFeedbackSolverTest, PartialScaleStillConverges) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.lambda = 0.125;  // half the admissible scale: slower but convergent
  cfg.eps1 = 1e-10;
  cfg.eps2 = 1e-13;
  cfg.max_iters = 200;
  const auto result = solve_nst_ht_subfb(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  EXPECT_GT(result.iterations, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-9);
}

TEST(StretchedSolverTest, StretchFactorRecoversTinyFamilyInOnePass) {
  SolverConfig cfg;
  cfg.s = 1;
  // theta = ||b||_1 / ||A_T x_T||_1 = 2 / 1.6 = 1.25 lifts 0.8 to exactly 1.
  const auto result = solve_nst_stretched_ht(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  EXPECT_EQ(result.iterations, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-14);
}

TEST(IhtSolverTest, FirstIterateMatchesHandComputedValue) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.eps1 = 1e-30;
  cfg.eps2 = 1e-30;
  cfg.max_iters = 2;
  std::vector<Vector> iterates;
  solve_iht(tiny_op(), kTinyRhs, cfg, std::nullopt,
            [&](const SolverState& st) { iterates.push_back(st.x); });
  ASSERT_EQ(iterates.size(), 2u);
  expect_vec_near(iterates[0], {0.8, 0.4}, 1e-14);
  // x^1 = u^0 + A*(b - A u^0) = [0.8, 0] + A* (0.4) = [1.6, 0.4].
  expect_vec_near(iterates[1], {1.6, 0.4}, 1e-14);
}

TEST(IhtSolverTest, CoincidesWithHardThresholdTuningOnOrthonormalRows) {
  const auto op = MeasurementOperator::build(parseval_frame(6, 14, 31));
  ASSERT_TRUE(op.is_parseval());
  Vector x_true(14, 0.0);
  x_true[2] = 1.3;
  x_true[9] = -0.7;
  const Vector b = op.apply(x_true);

  SolverConfig cfg;
  cfg.s = 2;
  cfg.eps1 = 1e-30;
  cfg.eps2 = 1e-30;
  cfg.max_iters = 25;

  std::vector<Vector> nst_us, iht_us;
  solve_nst_ht(op, b, cfg, std::nullopt,
               [&](const SolverState& st) { nst_us.push_back(st.u); });
  solve_iht(op, b, cfg, std::nullopt,
            [&](const SolverState& st) { iht_us.push_back(st.u); });
  ASSERT_EQ(nst_us.size(), iht_us.size());
  for (std::size_t k = 0; k < nst_us.size(); ++k) {
    expect_vec_near(iht_us[k], nst_us[k], 1e-12);
  }
}

TEST(IhtSolverTest, ReportsDivergenceInsteadOfOverflowing) {
  // Columns far from unit norm push the unit-step iteration outside its
  // contraction regime; the run must end as a failure, not an overflow.
  DenseMatrix m = gaussian_matrix(4, 8, 17);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) *= 3.0;
  const auto op = MeasurementOperator::build(m);
  Vector x_true(8, 0.0);
  x_true[1] = 1.0;
  x_true[5] = -2.0;
  const Vector b = op.apply(x_true);

  SolverConfig cfg;
  cfg.s = 2;
  cfg.eps1 = 1e-14;
  cfg.max_iters = 500;
  const auto result = solve_iht(op, b, cfg);
  EXPECT_EQ(result.termination, Termination::kFailed);
  EXPECT_EQ(result.failure_reason, "diverged");
}

TEST(SolverContractTest, ZeroRhsStopsImmediatelyWithZeroSolution) {
  const auto op = tiny_op();
  SolverConfig cfg;
  cfg.s = 1;
  for (const auto& result :
       {solve_nst_ht(op, {0.0}, cfg), solve_nst_ht_fb(op, {0.0}, cfg),
        solve_nst_stretched_ht(op, {0.0}, cfg), solve_iht(op, {0.0}, cfg)}) {
    EXPECT_EQ(result.termination, Termination::kResidualMet);
    EXPECT_EQ(result.iterations, 1);
    expect_vec_near(result.u, {0.0, 0.0}, 0.0);
  }
}

TEST(SolverContractTest, StagnationStopsBeforeResidualIsMet) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.eps1 = 1e-9;
  cfg.eps2 = 0.5;  // change after the second pass is 0.16/0.8 = 0.2 < 0.5
  const auto result = solve_nst_ht(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kStagnated);
  EXPECT_EQ(result.iterations, 2);
}

TEST(SolverContractTest, BudgetExhaustionReportsMaxIters) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.eps1 = 1e-30;
  cfg.eps2 = 1e-30;
  cfg.max_iters = 3;
  const auto result = solve_nst_ht(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.termination, Termination::kMaxIters);
  EXPECT_EQ(result.iterations, 3);
}

TEST(SolverContractTest, FirstPassSkipsStagnationTest) {
  SolverConfig cfg;
  cfg.s = 1;
  cfg.eps1 = 1e-30;
  cfg.eps2 = 1e30;  // any finite change would trip it
  cfg.max_iters = 2;
  // Still runs two passes: the change test must not fire on the first.
  const auto result = solve_nst_ht(tiny_op(), kTinyRhs, cfg);
  EXPECT_EQ(result.iterations, 2);
  EXPECT_EQ(result.termination, Termination::kStagnated);
}

TEST(SolverContractTest, SingularSelectionFailsGracefullyMidRun) {
  // Columns 0 and 1 are identical; selecting both makes the feedback fit
  // singular on the very first pass.
  const auto op = operator_of(2, 3, {1.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  const Vector b = {1.0, 0.1};
  SolverConfig cfg;
  cfg.s = 2;
  const auto result = solve_nst_ht_fb(op, b, cfg);
  EXPECT_EQ(result.termination, Termination::kFailed);
  EXPECT_FALSE(result.failure_reason.empty());
  // Best effort: the plain truncation of the iterate is still returned.
  EXPECT_EQ(result.u.size(), 3u);
}

TEST(SolverContractTest, RepeatedSupportWithZeroFitStopsAsSupportFixed) {
  // Column 0 is orthogonal to b while the minimum-norm iterate is largest in
  // slot 0, so the feedback fit on {0} is the zero vector twice in a row:
  // the support repeats with no measurable change to compare.
  const auto op = operator_of(2, 3, {0.0, 1.0, 5.0, 1.0, 0.0, 1.1});
  const Vector b = {1.0, 0.0};
  SolverConfig cfg;
  cfg.s = 1;
  cfg.max_iters = 10;
  const auto result = solve_nst_ht_fb(op, b, cfg);
  EXPECT_EQ(result.termination, Termination::kSupportFixed);
  EXPECT_EQ(result.iterations, 2);
}

TEST(SolverContractTest, InfeasibleWarmStartIsReprojected) {
  const auto op = tiny_op();
  SolverConfig cfg;
  cfg.s = 1;
  cfg.check_feasibility = true;
  cfg.max_iters = 5;
  cfg.eps1 = 1e-30;
  cfg.eps2 = 1e-30;
  Vector first_x;
  bool captured = false;
  const auto result = solve_nst_ht(op, kTinyRhs, cfg, Vector{3.0, 7.0},
                                   [&](const SolverState& st) {
                                     if (!captured) {
                                       first_x = st.x;
                                       captured = true;
                                     }
                                   });
  // Projection of [3, 7] onto {z : A z = b}: [3, 7] - (11/5) [2, 1].
  expect_vec_near(first_x, {-1.4, 4.8}, 1e-12);
  EXPECT_LE(result.max_feasibility_rel, 1e-12);
}

TEST(SolverContractTest, FeasibilityHoldsAcrossFamilyOnRandomInstance) {
  const auto op = MeasurementOperator::build(gaussian_matrix(6, 15, 77));
  Vector x_true(15, 0.0);
  x_true[3] = 1.0;
  x_true[8] = -0.5;
  x_true[12] = 2.0;
  const Vector b = op.apply(x_true);
  SolverConfig cfg;
  cfg.s = 3;
  cfg.check_feasibility = true;
  cfg.max_iters = 50;
  SolverConfig scaled = cfg;
  scaled.lambda_spectral = true;  // admissible scale for raw Gaussian columns
  for (const auto& result :
       {solve_nst_ht(op, b, cfg), solve_nst_ht_fb(op, b, cfg),
        solve_nst_ht_subfb(op, b, scaled), solve_nst_stretched_ht(op, b, cfg)}) {
    EXPECT_LE(result.max_feasibility_rel, 1e-9);
  }
}

TEST(SolverContractTest, ValidatesConfigurationAndShapes) {
  const auto op = tiny_op();
  SolverConfig cfg;
  cfg.s = 0;
  EXPECT_THROW(solve_nst_ht(op, kTinyRhs, cfg), InvalidArgumentError);
  cfg.s = 3;  // exceeds the two columns
  EXPECT_THROW(solve_nst_ht(op, kTinyRhs, cfg), InvalidArgumentError);
  cfg.s = 1;
  cfg.eps1 = 0.0;
  EXPECT_THROW(solve_nst_ht(op, kTinyRhs, cfg), InvalidArgumentError);
  cfg.eps1 = 1e-5;
  cfg.max_iters = 0;
  EXPECT_THROW(solve_nst_ht(op, kTinyRhs, cfg), InvalidArgumentError);
  cfg.max_iters = 10;
  cfg.lambda = 0.0;
  EXPECT_THROW(solve_nst_ht_subfb(op, kTinyRhs, cfg), InvalidArgumentError);
  cfg.lambda = 1.0;
  EXPECT_THROW(solve_nst_ht(op, {1.0, 2.0}, cfg), DimensionMismatchError);
  EXPECT_THROW(solve_nst_ht(op, kTinyRhs, cfg, Vector{1.0}), DimensionMismatchError);
  const Vector bad_rhs = {std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(solve_nst_ht(op, bad_rhs, cfg), InvalidArgumentError);
  // The feedback solver needs an invertible on-support Gram: s <= rows.
  const auto wide = operator_of(1, 4, {1.0, 0.5, 0.25, 0.125});
  SolverConfig fb_cfg;
  fb_cfg.s = 2;
  EXPECT_THROW(solve_nst_ht_fb(wide, {1.0}, fb_cfg), InvalidArgumentError);
}

TEST(OmpTest, RecoversTinyFamilyInOnePick) {
  const auto result = solve_omp(tiny_op(), kTinyRhs, 1);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  EXPECT_EQ(result.iterations, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-14);
}

TEST(OmpTest, BreaksCorrelationTiesTowardSmallerIndex) {
  const auto op = operator_of(2, 2, {1.0, 0.0, 0.0, 1.0});
  const auto result = solve_omp(op, {1.0, 1.0}, 1);
  expect_vec_near(result.u, {1.0, 0.0}, 1e-14);
}

TEST(OmpTest, ResidualIsOrthogonalToPickedColumns) {
  const auto op = MeasurementOperator::build(gaussian_matrix(8, 20, 41));
  Vector x_true(20, 0.0);
  x_true[4] = 1.0;
  x_true[11] = -2.0;
  x_true[17] = 0.5;
  const Vector b = op.apply(x_true);
  const auto result = solve_omp(op, b, 3);
  EXPECT_LE(result.iterations, 3);
  const Vector r = subtract(b, op.apply(result.u));
  const Vector c = op.apply_adjoint(r);
  int nonzeros = 0;
  for (std::size_t j = 0; j < result.u.size(); ++j) {
    if (result.u[j] != 0.0) {
      ++nonzeros;
      EXPECT_NEAR(c[j], 0.0, 1e-10) << "column " << j;
    }
  }
  EXPECT_LE(nonzeros, 3);
}

TEST(OmpTest, ZeroPickBudgetReturnsZeroVector) {
  const auto result = solve_omp(tiny_op(), kTinyRhs, 0);
  expect_vec_near(result.u, {0.0, 0.0}, 0.0);
  EXPECT_EQ(result.iterations, 0);
}

TEST(OmpTest, ValidatesSparsityRange) {
  EXPECT_THROW(solve_omp(tiny_op(), kTinyRhs, -1), InvalidArgumentError);
  EXPECT_THROW(solve_omp(tiny_op(), kTinyRhs, 2), InvalidArgumentError);
}

TEST(SpTest, RecoversExactSparseInstance) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(10, 24, 54));
  Vector x_true(24, 0.0);
  x_true[2] = 1.0;
  x_true[9] = -1.5;
  x_true[20] = 0.7;
  const Vector b = op.apply(x_true);
  SolverConfig cfg;
  cfg.s = 3;
  const auto result = solve_sp(op, b, 3, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  expect_vec_near(result.u, x_true, 1e-8);
}

TEST(SpTest, KeepsPreviousSupportWhenResidualWouldNotImprove) {
  // With an unreachable tolerance the refinement loop must end by reporting
  // stagnation once the residual stops strictly decreasing, never looping.
  const auto op = MeasurementOperator::build(gaussian_matrix(5, 12, 67));
  CounterRng rng(3);
  Vector b(5);
  for (double& v : b) v = rng.next_gaussian();  // generic rhs: no exact fit
  SolverConfig cfg;
  cfg.s = 2;
  cfg.eps1 = 1e-14;
  cfg.max_iters = 100;
  const auto result = solve_sp(op, b, 2, cfg);
  EXPECT_EQ(result.termination, Termination::kStagnated);
  EXPECT_LT(result.iterations, 100);
  int nonzeros = 0;
  for (double v : result.u) nonzeros += (v != 0.0);
  EXPECT_LE(nonzeros, 2);
}

TEST(HtpTest, RecoversExactSparseInstance) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(10, 24, 60));
  Vector x_true(24, 0.0);
  x_true[5] = 2.0;
  x_true[13] = -1.0;
  const Vector b = op.apply(x_true);
  SolverConfig cfg;
  cfg.s = 2;
  const auto result = solve_htp(op, b, 2, cfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  expect_vec_near(result.u, x_true, 1e-8);
}

TEST(HtpTest, StationarySupportReportsSupportFixed) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(6, 14, 61));
  CounterRng rng(9);
  Vector b(6);
  for (double& v : b) v = rng.next_gaussian();  // no exact 2-sparse fit
  SolverConfig cfg;
  cfg.s = 2;
  cfg.eps1 = 1e-14;
  cfg.max_iters = 200;
  const auto result = solve_htp(op, b, 2, cfg);
  EXPECT_EQ(result.termination, Termination::kSupportFixed);
  EXPECT_LT(result.iterations, 200);
}

TEST(AdaptiveTest, SingleLevelRunMatchesDirectSolver) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(8, 20, 71));
  Vector x_true(20, 0.0);
  x_true[1] = 1.0;
  x_true[7] = -2.0;
  const Vector b = op.apply(x_true);

  AdaptiveConfig acfg;
  acfg.s0 = 2;
  acfg.s_max = 2;
  acfg.variant = NstVariant::kHardThresholdFeedback;
  const auto adaptive = solve_adaptive(op, b, acfg);
  const auto direct = solve_nst_ht_fb(op, b, acfg.inner.with_sparsity(2));
  EXPECT_EQ(adaptive.termination, direct.termination);
  EXPECT_EQ(adaptive.iterations, direct.iterations);
  expect_vec_near(adaptive.u, direct.u, 0.0);
}

TEST(AdaptiveTest, GrowsSparsityUntilResidualIsMet) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(12, 25, 83));
  Vector x_true(25, 0.0);
  x_true[3] = 1.0;
  x_true[10] = -1.2;
  x_true[18] = 0.9;
  const Vector b = op.apply(x_true);

  AdaptiveConfig acfg;
  acfg.s0 = 1;
  acfg.s_step = 1;
  acfg.s_max = 5;
  acfg.variant = NstVariant::kHardThresholdFeedback;
  acfg.inner.trace = true;
  acfg.inner.max_iters = 50;
  const auto result = solve_adaptive(op, b, acfg);
  EXPECT_EQ(result.termination, Termination::kResidualMet);
  expect_vec_near(result.u, x_true, 1e-6);

  // Iterations accumulate across sparsity levels and the concatenated trace
  // is re-indexed into one global, gap-free iteration count.
  ASSERT_EQ(static_cast<int>(result.trace.size()), result.iterations);
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    EXPECT_EQ(result.trace[i].iter, static_cast<int>(i));
  }
  EXPECT_GT(result.iterations, 1);
}

TEST(AdaptiveTest, ObserverSeesGloballyIndexedIterations) {
  const auto op = MeasurementOperator::build(testutil::unit_column_matrix(16, 25, 83));
  Vector x_true(25, 0.0);
  x_true[3] = 1.0;
  x_true[10] = -1.2;
  x_true[18] = 0.9;
  const Vector b = op.apply(x_true);

  AdaptiveConfig acfg;
  acfg.s0 = 1;
  acfg.s_step = 1;  // three sparsity levels before the residual is met
  acfg.s_max = 7;
  acfg.variant = NstVariant::kHardThreshold;
  acfg.inner.max_iters = 30;
  std::vector<int> seen;
  const auto result = solve_adaptive(op, b, acfg,
                                     [&](const SolverState& st) { seen.push_back(st.iter); });
  ASSERT_EQ(static_cast<int>(seen.size()), result.iterations);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    EXPECT_EQ(seen[i], static_cast<int>(i));
  }
}

TEST(AdaptiveTest, ExhaustedSparsityBudgetReportsMaxIters) {
  const auto op = MeasurementOperator::build(gaussian_matrix(4, 10, 97));
  CounterRng rng(13);
  Vector b(4);
  for (double& v : b) v = rng.next_gaussian();  // generic rhs: no sparse fit
  AdaptiveConfig acfg;
  acfg.s0 = 1;
  acfg.s_max = 2;
  acfg.variant = NstVariant::kHardThresholdFeedback;
  acfg.inner.eps1 = 1e-14;
  acfg.inner.max_iters = 20;
  const auto result = solve_adaptive(op, b, acfg);
  EXPECT_EQ(result.termination, Termination::kMaxIters);
  EXPECT_GE(result.residual_rel, 1e-14);
}

TEST(AdaptiveTest, ValidatesConfiguration) {
  const auto op = tiny_op();
  AdaptiveConfig acfg;
  acfg.s0 = 0;
  EXPECT_THROW(solve_adaptive(op, kTinyRhs, acfg), InvalidArgumentError);
  acfg.s0 = 2;
  acfg.s_max = 1;
  EXPECT_THROW(solve_adaptive(op, kTinyRhs, acfg), InvalidArgumentError);
  acfg.s0 = 1;
  acfg.s_max = 1;
  acfg.s_step = 0;
  EXPECT_THROW(solve_adaptive(op, kTinyRhs, acfg), InvalidArgumentError);
}

TEST(AdaptiveTest, VariantNamesAreStable) {
  EXPECT_STREQ(to_string(NstVariant::kHardThreshold), "nst_ht");
  EXPECT_STREQ(to_string(NstVariant::kHardThresholdFeedback), "nst_ht_fb");
  EXPECT_STREQ(to_string(NstVariant::kHardThresholdSubFeedback), "nst_ht_subfb");
  EXPECT_STREQ(to_string(NstVariant::kStretchedHardThreshold), "nst_stretched_ht");
}

TEST(TerminationTest, LabelsAreStable) {
  EXPECT_STREQ(to_string(Termination::kResidualMet), "residual_met");
  EXPECT_STREQ(to_string(Termination::kStagnated), "stagnated");
  EXPECT_STREQ(to_string(Termination::kSupportFixed), "support_fixed");
  EXPECT_STREQ(to_string(Termination::kMaxIters), "max_iters");
  EXPECT_STREQ(to_string(Termination::kFailed), "failed");
}

}  // namespace
}  // namespace nst
