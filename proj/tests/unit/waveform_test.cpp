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

#include <gtest/gtest.h>

#include "adaptrr/error.hpp"
#include "adaptrr/waveform.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace adaptrr {
namespace {

using testing::simpson;
using testing::steady_ground_truth;
constexpr double kPi = std::numbers::pi;

AnchorSeries series(std::vector<AnchorPoint> p) { return AnchorSeries(std::move(p)); }

TEST(AnchorSeries, RejectsBadInput) {
  EXPECT_THROW(series({{0, 1}}), InvalidInput);
  EXPECT_THROW(series({{0, 1}, {0, 2}}), InvalidInput);
  EXPECT_THROW(series({{1, 1}, {0, 2}}), InvalidInput);
  EXPECT_THROW(series({{0, 1}, {1, NAN}}), InvalidInput);
}

TEST(PiecewisePoly, EvaluatesAndDifferentiates) {
  // 1 + 2x + 3x^2 on [0, 1], then constant 6 on [1, 2].
  const PiecewisePoly p({0.0, 1.0, 2.0}, {{1, 2, 3, 0, 0}, {6, 0, 0, 0, 0}});
  EXPECT_DOUBLE_EQ(p(0.5), 1 + 1 + 0.75);
  EXPECT_DOUBLE_EQ(p(1.0), 6.0);
  EXPECT_DOUBLE_EQ(p.derivative_at(0.5, 1), 2 + 3);
  EXPECT_DOUBLE_EQ(p.derivative()(0.25), 2 + 1.5);
  const PiecewisePoly q = p.antiderivative(1.0);
  EXPECT_DOUBLE_EQ(q(1.0), 1.0 + 1 + 1 + 1);
  EXPECT_DOUBLE_EQ(q(2.0), 4.0 + 6.0);
  EXPECT_THROW(p(2.5), RangeError);
  EXPECT_THROW(p(-0.1), RangeError);
}

TEST(Pchip, ConstantData) {
  const auto f = pchip_fit(series({{0, 5}, {1, 5}, {2, 5}}));
  for (double t = 0.0; t <= 2.0; t += 0.01) EXPECT_EQ(f(t), 5.0);
}

TEST(Pchip, CollinearDataIsALine) {
  const auto f = pchip_fit(series({{0, 0}, {1, 1}, {2, 2}}));
  for (double t = 0.0; t <= 2.0; t += 0.01) {
    EXPECT_NEAR(f(t), t, 1e-15);
    EXPECT_NEAR(f.derivative_at(t, 1), 1.0, 1e-14);
  }
}

TEST(Pchip, NoOvershootOnNearlyFlatStep) {
  const auto f = pchip_fit(series({{0, 0}, {1, 1}, {2, 1.05}, {3, 4}}));
  double lo = f(0.0), hi = f(0.0), prev = f(0.0);
  for (int i = 1; i <= 3000; ++i) {
    const double v = f(i * 1e-3);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    EXPECT_GE(v, prev) << "at t=" << i * 1e-3;
    prev = v;
  }
  // Endpoint evaluation may round one ulp past the data.
  EXPECT_GE(lo, -1e-12);
  EXPECT_LE(hi, 4.0 + 1e-12);
}

TEST(IntegratePhase, ZeroDeviationGivesZeroPhase) {
  const auto phi = integrate_phase(PiecewisePoly::constant(0, 3, 50.0), 50.0, 0.0);
  for (double t = 0.0; t <= 3.0; t += 0.1) EXPECT_EQ(phi(t), 0.0);
}

TEST(IntegratePhase, ConstantOffset) {
  const auto phi = integrate_phase(PiecewisePoly::constant(0, 2, 51.0), 50.0, 0.0);
  EXPECT_NEAR(phi(2.0), 4.0 * kPi, 1e-13);
}

TEST(IntegratePhase, LinearRampMatchesSimpson) {
  const auto freq = pchip_fit(series({{0, 50}, {1, 51}}));
  const auto phi = integrate_phase(freq, 50.0, 0.0);
  EXPECT_NEAR(phi(1.0), kPi, 1e-12);
  const double quad = simpson([&](double t) { return 2 * kPi * (freq(t) - 50.0); }, 0.0, 1.0, 1000);
  EXPECT_NEAR(phi(1.0), quad, 1e-9);
}

TEST(IntegratePhase, CubicPiecesMatchSimpson) {
  const auto freq = pchip_fit(series({{0, 50}, {0.4, 50.3}, {0.9, 49.8}, {1.5, 50.1}}));
  const auto phi = integrate_phase(freq, 50.0, 0.2);
  for (double t : {0.3, 0.77, 1.2, 1.5}) {
    const double quad =
        0.2 + simpson([&](double x) { return 2 * kPi * (freq(x) - 50.0); }, 0.0, t, 2000);
    EXPECT_NEAR(phi(t), quad, 1e-9) << "t=" << t;
  }
}

TEST(Differentiate, ConstantAndRamp) {
  const auto zero = differentiate(PiecewisePoly::constant(0, 1, 50.0));
  const auto ramp = differentiate(pchip_fit(series({{0, 50}, {1, 49.5}})));
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    EXPECT_EQ(zero(t), 0.0);
    EXPECT_NEAR(ramp(t), -0.5, 1e-13);
  }
}

TEST(Differentiate, MatchesCentralDifferences) {
  const auto freq = pchip_fit(series({{0, 50}, {0.5, 50.2}, {1.0, 49.9}, {2.0, 50.05}}));
  const auto rocof = differentiate(freq);
  const double h = 1e-5;
  for (double t : {0.25, 0.75, 1.5}) {
    const double fd = (freq(t + h) - freq(t - h)) / (2 * h);
    EXPECT_NEAR(rocof(t), fd, 1e-6) << "t=" << t;
  }
}

TEST(GroundTruth, Validates) {
  const auto a = series({{0, 230}, {1, 230}});
  const auto f = series({{0, 50}, {1, 50}});
  EXPECT_THROW(GroundTruth::from_anchors(a, f, 50.0, 90.0), InvalidInput);
  EXPECT_THROW(GroundTruth::from_anchors(a, series({{0, 50}, {2, 50}}), 50.0, 1e4), InvalidInput);
  EXPECT_THROW(GroundTruth::from_anchors(series({{0, -1}, {1, 2}}), f, 50.0, 1e4), InvalidInput);
  EXPECT_THROW(GroundTruth::from_anchors(a, series({{0, 0}, {1, 50}}), 50.0, 1e4), InvalidInput);
}

TEST(Synthesis, UnitCosine) {
  const auto gt = steady_ground_truth(1.0 / std::sqrt(2.0), 50.0, 1.0);
  const auto block = synth_three_phase(gt, std::int64_t{0}, 10);
  EXPECT_NEAR(block.phase(0)[0], 1.0, 1e-15);
  EXPECT_NEAR(block.phase(1)[0], std::cos(-2 * kPi / 3), 1e-15);
  EXPECT_NEAR(block.phase(2)[0], std::cos(-4 * kPi / 3), 1e-15);
}

TEST(Synthesis, ZeroAmplitudeIsSilent) {
  const auto gt = steady_ground_truth(0.0, 50.0, 0.1);
  const auto block = synth_three_phase(gt);
  for (std::size_t p = 0; p < 3; ++p) {
    for (double v : block.phase(p)) EXPECT_EQ(v, 0.0);
  }
}

TEST(Synthesis, RangeChecked) {
  const auto gt = steady_ground_truth(230.0, 50.0, 0.1);
  EXPECT_THROW(synth_three_phase(gt, std::int64_t{-1}, 10), RangeError);
  EXPECT_THROW(synth_three_phase(gt, std::int64_t{995}, 10), RangeError);
  EXPECT_EQ(synth_three_phase(gt).size(), 1001u);
}

TEST(Synthesis, WindowedRmsTracksSlowAmplitudeRamp) {
  // 0.1 V/s ramp with a gentle frequency drift.
  const auto gt = GroundTruth::from_anchors(series({{0, 230}, {5, 230.5}}),
                                            series({{0, 49.9}, {2.5, 50.1}, {5, 50.0}}), 50.0,
                                            1e4, 0.7);
  const auto block = synth_three_phase(gt);
  for (double tc = 0.5; tc < 4.5; tc += 0.37) {
    const auto centre = static_cast<std::int64_t>(std::llround(tc * 1e4));
    for (std::size_t p = 0; p < 3; ++p) {
      // One true period of the local frequency, rounded to whole samples.
      const auto len = static_cast<std::int64_t>(std::llround(1e4 / gt.frequency()(tc)));
      const auto x = block.view(p, centre - len / 2, static_cast<std::size_t>(len));
      double s = 0.0;
      for (double v : x) s += v * v;
      const double r = std::sqrt(s / static_cast<double>(len));
      EXPECT_NEAR(r, gt.amplitude()(tc), 0.005 * gt.amplitude()(tc)) << "t=" << tc;
    }
  }
}

TEST(Reference, SteadyNominal) {
  const auto gt = steady_ground_truth(230.0, 50.0, 2.0);
  const auto m = eval_reference(gt, 1.3);
  EXPECT_EQ(m.phasor, Complex(230.0, 0.0));
  EXPECT_EQ(m.frequency, 50.0);
  EXPECT_EQ(m.rocof, 0.0);
}

TEST(Reference, HalfHertzOffsetAfterOneSecond) {
  const auto gt = steady_ground_truth(1.0, 50.5, 2.0);
  EXPECT_NEAR(gt.phase()(1.0), kPi, 1e-14);
  EXPECT_NEAR(std::abs(std::arg(eval_reference(gt, 1.0).phasor)), kPi, 1e-14);
}

TEST(Reference, MagnitudeIsTheAmplitudePolynomial) {
  testing::Rng rng(11);
  const auto gt = testing::random_ground_truth(rng);
  for (double t = 0.0; t <= gt.domain_end(); t += 0.0137) {
    EXPECT_NEAR(std::abs(eval_reference(gt, t).phasor), gt.amplitude()(t),
                1e-15 * gt.amplitude()(t));
  }
}

}  // namespace
}  // namespace adaptrr
