// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "adaptrr/error.hpp"
#include "adaptrr/estimators.hpp"
#include "adaptrr/metrics.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace adaptrr {
namespace {

using testing::steady_ground_truth;
constexpr double kPi = std::numbers::pi;
const Complex kAlpha = std::polar(1.0, 2 * kPi / 3);

TEST(Fortescue, BalancedPositiveSet) {
  const Complex got = fortescue_positive({1.0, 1.0 / kAlpha, 1.0 / (kAlpha * kAlpha)});
  EXPECT_NEAR(std::abs(got - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Fortescue, ZeroSequenceVanishes) {
  EXPECT_NEAR(std::abs(fortescue_positive({1.0, 1.0, 1.0})), 0.0, 1e-15);
}

TEST(Fortescue, MatchesMatrixOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-300, 300);
  for (int i = 0; i < 200; ++i) {
    const std::array<Complex, 3> abc{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                                     Complex(u(rng), u(rng))};
    const Complex want = testing::symmetrical_components(abc)[1];
    EXPECT_LE(testing::rel_diff(fortescue_positive(abc), want, 0.0), 1e-14);
  }
}

TEST(EstimatorConfig, RejectsNonIntegerRatios) {
  EXPECT_THROW((EstimatorConfig{50.0, 10001.0, 100.0}.validate()), InvalidInput);
  EXPECT_THROW((EstimatorConfig{50.0, 10000.0, 30.0}.validate()), InvalidInput);
  EXPECT_NO_THROW((EstimatorConfig{60.0, 12000.0, 120.0}.validate()));
  EXPECT_EQ((EstimatorConfig{}.samples_per_cycle()), 200);
  EXPECT_EQ((EstimatorConfig{}.report_step()), 100);
}

TEST(EstimatorKind, Names) {
  EXPECT_EQ(parse_estimator_kind("p_iec"), EstimatorKind::kPIec);
  EXPECT_EQ(parse_estimator_kind("i_ipdft"), EstimatorKind::kIIpDft);
  EXPECT_THROW(parse_estimator_kind("svf"), InvalidInput);
}

class BothEstimators : public ::testing::TestWithParam<EstimatorKind> {
 protected:
  EstimatorSpec spec() const { return {GetParam(), 3}; }
};

TEST_P(BothEstimators, SteadyNominalIsExact) {
  const auto gt = steady_ground_truth(230.0, 50.0, 1.0);
  for (const auto& m : run_estimator(spec(), gt, EstimatorConfig{}, 0.1, 0.9)) {
    EXPECT_LE(tve(m.phasor, Complex(230.0, 0.0)), 1e-6);
    EXPECT_NEAR(m.frequency, 50.0, 1e-6);
    EXPECT_NEAR(m.rocof, 0.0, 1e-4);
  }
}

TEST_P(BothEstimators, OffNominalCompliance) {
  const auto gt = steady_ground_truth(230.0, 50.5, 1.0, 0.4);
  for (const auto& m : run_estimator(spec(), gt, EstimatorConfig{}, 0.1, 0.9)) {
    const auto ref = eval_reference(gt, m.t);
    EXPECT_LE(tve(m.phasor, ref.phasor), 1.0);
    EXPECT_LE(std::abs(fe(m.frequency, ref.frequency)), 5.0);
  }
}

TEST_P(BothEstimators, SpanCountIsInclusive) {
  const auto gt = steady_ground_truth(230.0, 50.0, 1.2);
  const auto s = run_estimator(spec(), gt, EstimatorConfig{}, 0.1, 1.1);
  ASSERT_EQ(s.size(), 101u);
  EXPECT_DOUBLE_EQ(s.front().t, 0.1);
  EXPECT_DOUBLE_EQ(s.back().t, 1.1);
  for (const auto& m : s) {
    EXPECT_LE(testing::rel_diff(m.phasor, s.front().phasor, 0.0), 1e-9);
    EXPECT_LE(testing::rel_diff(m.frequency, s.front().frequency, 0.0), 1e-9);
  }
}

TEST_P(BothEstimators, RunEqualsIndividualEstimates) {
  testing::Rng rng(3);
  const auto gt = testing::random_ground_truth(rng);
  const auto block = synth_three_phase(gt);
  const auto est = make_estimator(spec(), EstimatorConfig{});
  const auto stream = est->run(block, 600, 150);
  for (std::size_t h = 0; h < stream.size(); ++h) {
    EXPECT_EQ(stream[h], est->estimate(block, 600 + 100 * static_cast<std::int64_t>(h)));
  }
}

TEST_P(BothEstimators, WindowMustFit) {
  const auto gt = steady_ground_truth(230.0, 50.0, 1.0);
  const auto block = synth_three_phase(gt);
  const auto est = make_estimator(spec(), EstimatorConfig{});
  EXPECT_THROW(est->estimate(block, est->lead() - 1), InvalidInput);
  EXPECT_NO_THROW(est->estimate(block, est->lead()));
  EXPECT_THROW(est->estimate(block, block.last_index() - est->lag() + 1), InvalidInput);
  EXPECT_THROW(run_estimator(spec(), gt, EstimatorConfig{}, 0.0, 0.5), InvalidInput);
}

INSTANTIATE_TEST_SUITE_P(Estimators, BothEstimators,
                         ::testing::Values(EstimatorKind::kPIec, EstimatorKind::kIIpDft),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(PIec, TapsAreANormalisedTriangle) {
  const PIecEstimator est(EstimatorConfig{});
  const auto w = est.taps();
  ASSERT_EQ(w.size(), 399u);
  double sum = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    sum += w[n];
    const double tri = 1.0 - std::abs(static_cast<double>(n) - 199.0) / 200.0;
    EXPECT_NEAR(w[n], tri / 200.0, 1e-17);
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_EQ(est.filter_gain(0.0), 1.0);
}

TEST(PIec, RocofAtRampCentre) {
  const auto gt = GroundTruth::from_anchors(AnchorSeries({{0, 230}, {1, 230}}),
                                            AnchorSeries({{0, 49.5}, {1, 50.5}}), 50.0, 1e4);
  const PIecEstimator est(EstimatorConfig{});
  const auto block = synth_three_phase(gt);
  const auto m = est.estimate(block, 5000);
  EXPECT_NEAR(m.rocof, eval_reference(gt, 0.5).rocof, 0.01);
  EXPECT_NEAR(m.rocof, 1.0, 0.01);
}

TEST(IIpDft, NominalBinCentreIsExact) {
  const auto gt = steady_ground_truth(230.0, 50.0, 0.5, 0.9);
  const auto block = synth_three_phase(gt);
  const IIpDftEstimator est(EstimatorConfig{}, 2);
  const auto frame = est.analyze(block, 2500);
  for (const auto& p : frame.phases) EXPECT_NEAR(p.delta, 0.0, 1e-12);
  EXPECT_LE(tve(frame.positive_sequence, eval_reference(gt, 0.25).phasor), 1e-8);
}

TEST(IIpDft, PerPhaseAgreementAt49_7) {
  const auto gt = steady_ground_truth(230.0, 49.7, 0.5, 1.3);
  const auto block = synth_three_phase(gt);
  const IIpDftEstimator est(EstimatorConfig{}, 3);
  const auto frame = est.analyze(block, 2500);
  for (const auto& p : frame.phases) {
    EXPECT_NEAR(p.frequency, frame.phases[0].frequency, 1e-6);
  }
  EXPECT_NEAR(frame.frequency, 49.7, 1e-3);
}

TEST(IIpDft, KernelAtZeroIsHalfTheWindowLength) {
  const IIpDftEstimator est(EstimatorConfig{}, 3);
  EXPECT_NEAR(std::abs(est.kernel(0.0)), 300.0, 1e-10);
  EXPECT_NEAR(std::abs(est.kernel(1.0)), 150.0, 1e-10);
  EXPECT_NEAR(std::abs(est.kernel(2.0)), 0.0, 1e-10);
}

TEST(IIpDft, SilenceIsDegenerate) {
  const auto gt = steady_ground_truth(0.0, 50.0, 0.5);
  const auto block = synth_three_phase(gt);
  const IIpDftEstimator est(EstimatorConfig{}, 3);
  EXPECT_THROW(est.estimate(block, 2500), DegenerateSignal);
}

}  // namespace
}  // namespace adaptrr
