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

#include "adaptrr/waveform.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

namespace adaptrr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Returns M when fs / f0 is a positive integer, 0 otherwise.
std::int64_t samples_per_cycle(double f0, double fs) {
  const double m = fs / f0;
  const double r = std::round(m);
  if (r >= 1.0 && std::abs(m - r) <= 1e-9 * r) return static_cast<std::int64_t>(r);
  return 0;
}

}  // namespace

AnchorSeries::AnchorSeries(std::vector<AnchorPoint> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InvalidInput(fmt::format("anchor series needs at least 2 points, got {}",
                                   points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.value)) {
      throw InvalidInput(fmt::format("non-finite anchor at index {}", i));
    }
    if (i > 0 && !(p.t > points_[i - 1].t)) {
      throw InvalidInput(
          fmt::format("anchor times not strictly increasing at index {}", i));
    }
  }
}

PiecewisePoly pchip_fit(const AnchorSeries& anchors) {
  const auto pts = anchors.points();
  const std::size_t n = pts.size();

  std::vector<double> h(n - 1);
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = pts[i + 1].t - pts[i].t;
    secant[i] = (pts[i + 1].value - pts[i].value) / h[i];
  }

  // Initial slopes: one-sided secants at the ends, the mean of adjacent
  // secants inside, zero at local extrema.
  std::vector<double> d(n);
  d[0] = secant[0];
  d[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = secant[i - 1];
    const double b = secant[i];
    d[i] = (a * b > 0.0) ? 0.5 * (a + b) : 0.0;
  }

  // Fritsch-Carlson: keep (alpha, beta) inside the circle of radius 3.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      d[i] = 0.0;
      d[i + 1] = 0.0;
      continue;
    }
    const double alpha = d[i] / secant[i];
    const double beta = d[i + 1] / secant[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d[i] = tau * alpha * secant[i];
      d[i + 1] = tau * beta * secant[i];
    }
  }

  std::vector<double> breaks(n);
  std::vector<PiecewisePoly::Coeffs> pieces(n - 1);
  for (std::size_t i = 0; i < n; ++i) breaks[i] = pts[i].t;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double y0 = pts[i].value;
    const double hi = h[i];
    auto& c = pieces[i];
    c = {};
    c[0] = y0;
    c[1] = d[i];
    c[2] = (3.0 * secant[i] - 2.0 * d[i] - d[i + 1]) / hi;
    c[3] = (d[i] + d[i + 1] - 2.0 * secant[i]) / (hi * hi);
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

PiecewisePoly integrate_phase(const PiecewisePoly& frequency, double f0,
                              double phase0) {
  return frequency.offset(-f0).scaled(kTwoPi).antiderivative(phase0);
}

PiecewisePoly differentiate(const PiecewisePoly& frequency) {
  return frequency.derivative();
}

GroundTruth::GroundTruth(PiecewisePoly amplitude, PiecewisePoly frequency,
                         double f0, double fs, double phase0)
    : amplitude_(std::move(amplitude)),
      frequency_(std::move(frequency)),
      phase_(integrate_phase(frequency_, f0, phase0)),
      rocof_(differentiate(frequency_)),
      f0_(f0),
      fs_(fs) {
  if (!(f0 > 0.0) || !std::isfinite(f0)) throw InvalidInput("f0 must be positive");
  if (!(fs > 2.0 * f0) || !std::isfinite(fs)) {
    throw InvalidInput("fs must exceed twice the rated frequency");
  }
  if (amplitude_.domain_begin() != frequency_.domain_begin() ||
      amplitude_.domain_end() != frequency_.domain_end()) {
    throw InvalidInput(fmt::format(
        "amplitude domain [{}, {}] differs from frequency domain [{}, {}]",
        amplitude_.domain_begin(), amplitude_.domain_end(),
        frequency_.domain_begin(), frequency_.domain_end()));
  }
}

GroundTruth GroundTruth::from_anchors(const AnchorSeries& amplitude,
                                      const AnchorSeries& frequency, double f0,
                                      double fs, double phase0) {
  for (const auto& p : amplitude.points()) {
    if (p.value < 0.0) throw InvalidInput("negative amplitude anchor");
  }
  for (const auto& p : frequency.points()) {
    if (!(p.value > 0.0)) throw InvalidInput("non-positive frequency anchor");
  }
  return GroundTruth(pchip_fit(amplitude), pchip_fit(frequency), f0, fs, phase0);
}

std::int64_t GroundTruth::first_sample() const {
  return static_cast<std::int64_t>(std::ceil(domain_begin() * fs_ - 1e-6));
}

std::int64_t GroundTruth::last_sample() const {
  return static_cast<std::int64_t>(std::floor(domain_end() * fs_ + 1e-6));
}

MeasurementTriplet eval_reference(const GroundTruth& gt, double t) {
  const double a = gt.amplitude()(t);
  const double phi = gt.phase()(t);
  return MeasurementTriplet{t, std::polar(a, phi), gt.frequency()(t),
                            gt.rocof()(t)};
}

SampleBlock::SampleBlock(std::int64_t first_index, double fs,
                         std::array<std::vector<double>, kPhases> phases)
    : first_(first_index), fs_(fs), phases_(std::move(phases)) {
  if (phases_[1].size() != phases_[0].size() ||
      phases_[2].size() != phases_[0].size()) {
    throw InvalidInput("phase arrays differ in length");
  }
  if (!(fs_ > 0.0)) throw InvalidInput("sample rate must be positive");
}

std::span<const double> SampleBlock::view(std::size_t phase, std::int64_t lo,
                                          std::size_t count) const {
  return std::span<const double>(phases_[phase])
      .subspan(static_cast<std::size_t>(lo - first_), count);
}

SampleBlock SampleBlock::scaled(double factor) const {
  auto out = phases_;
  for (auto& ph : out) {
    for (double& v : ph) v *= factor;
  }
  return SampleBlock(first_, fs_, std::move(out));
}

SampleBlock synth_three_phase(const GroundTruth& gt, std::int64_t first_index,
                              std::size_t n) {
  const double fs = gt.fs();
  if (n > 0) {
    const double t_lo = static_cast<double>(first_index) / fs;
    const double t_hi =
        static_cast<double>(first_index + static_cast<std::int64_t>(n) - 1) / fs;
    if (!gt.phase().contains(t_lo) || !gt.phase().contains(t_hi)) {
      throw RangeError(fmt::format(
          "synthesis range [{}, {}] s leaves ground-truth domain [{}, {}]",
          t_lo, t_hi, gt.domain_begin(), gt.domain_end()));
    }
  }

  const std::int64_t m = samples_per_cycle(gt.f0(), fs);
  std::array<std::vector<double>, SampleBlock::kPhases> phases;
  for (auto& p : phases) p.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t idx = first_index + static_cast<std::int64_t>(i);
    const double t = static_cast<double>(idx) / fs;
    // Nominal angle 2*pi*f0*t, reduced modulo one cycle.
    double nominal;
    if (m > 0) {
      std::int64_t k = idx % m;
      if (k < 0) k += m;
      nominal = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    } else {
      const double cycles = static_cast<double>(idx) * gt.f0() / fs;
      nominal = kTwoPi * (cycles - std::floor(cycles));
    }
    const double peak = std::numbers::sqrt2 * gt.amplitude()(t);
    const double theta = nominal + gt.phase()(t);
    for (std::size_t p = 0; p < SampleBlock::kPhases; ++p) {
      phases[p][i] =
          peak * std::cos(theta - kTwoPi * static_cast<double>(p) / 3.0);
    }
  }
  return SampleBlock(first_index, fs, std::move(phases));
}

SampleBlock synth_three_phase(const GroundTruth& gt, double t0, std::size_t n) {
  const double pos = t0 * gt.fs();
  const double idx = std::round(pos);
  if (std::abs(pos - idx) > 1e-6) {
    throw InvalidInput(fmt::format("t0 = {} s is not on the {} Hz sample grid",
                                   t0, gt.fs()));
  }
  return synth_three_phase(gt, static_cast<std::int64_t>(idx), n);
}

SampleBlock synth_three_phase(const GroundTruth& gt) {
  const auto first = gt.first_sample();
  const auto last = gt.last_sample();
  return synth_three_phase(gt, first, static_cast<std::size_t>(last - first + 1));
}

}  // namespace adaptrr
