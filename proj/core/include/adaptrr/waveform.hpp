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

#ifndef ADAPTRR_WAVEFORM_HPP
#define ADAPTRR_WAVEFORM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adaptrr/piecewise_poly.hpp"
#include "adaptrr/triplet.hpp"

namespace adaptrr {

struct AnchorPoint {
  double t = 0.0;
  double value = 0.0;
};

// Sparse event data for one quantity: strictly increasing times, at least two
// points, finite values. The constructor enforces this.
class AnchorSeries {
 public:
  explicit AnchorSeries(std::vector<AnchorPoint> points);

  std::span<const AnchorPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double front_time() const { return points_.front().t; }
  double back_time() const { return points_.back().t; }

 private:
  std::vector<AnchorPoint> points_;
};

// Shape-preserving cubic Hermite interpolant with Fritsch-Carlson slope
// limiting. Interpolates every anchor, is C1, and is monotone on every
// interval where the anchors are.
PiecewisePoly pchip_fit(const AnchorSeries& anchors);

// phase(t) = phase0 + 2*pi * integral_{t_begin}^{t} (f(tau) - f0) dtau, the
// synchrophasor angle in the nominal rotating frame.
PiecewisePoly integrate_phase(const PiecewisePoly& frequency, double f0,
                              double phase0);

// ROCOF in Hz/s. May be discontinuous at breakpoints.
PiecewisePoly differentiate(const PiecewisePoly& frequency);

// Continuous reference for one event: rms amplitude, frequency, phase angle
// and ROCOF on a shared domain, plus the rated frequency and the sample rate
// of the synthesized stream.
class GroundTruth {
 public:
  GroundTruth(PiecewisePoly amplitude, PiecewisePoly frequency, double f0,
              double fs, double phase0 = 0.0);

  // pchip-fits both series. They must start and end at the same instants.
  static GroundTruth from_anchors(const AnchorSeries& amplitude,
                                  const AnchorSeries& frequency, double f0,
                                  double fs, double phase0 = 0.0);

  const PiecewisePoly& amplitude() const { return amplitude_; }
  const PiecewisePoly& frequency() const { return frequency_; }
  const PiecewisePoly& phase() const { return phase_; }
  const PiecewisePoly& rocof() const { return rocof_; }
  double f0() const { return f0_; }
  double fs() const { return fs_; }
  double domain_begin() const { return frequency_.domain_begin(); }
  double domain_end() const { return frequency_.domain_end(); }

  // Sample index range [first, last] whose instants n/fs lie in the domain.
  std::int64_t first_sample() const;
  std::int64_t last_sample() const;

 private:
  PiecewisePoly amplitude_;
  PiecewisePoly frequency_;
  PiecewisePoly phase_;
  PiecewisePoly rocof_;
  double f0_;
  double fs_;
};

// Reference synchrophasor A(t)*exp(j*phase(t)), frequency and ROCOF at t.
MeasurementTriplet eval_reference(const GroundTruth& gt, double t);

// Three-phase instantaneous samples on the absolute grid t = n / fs.
// Sample n of the block is stored at offset n - first_index.
class SampleBlock {
 public:
  static constexpr std::size_t kPhases = 3;

  SampleBlock(std::int64_t first_index, double fs,
              std::array<std::vector<double>, kPhases> phases);

  std::int64_t first_index() const { return first_; }
  std::int64_t last_index() const {
    return first_ + static_cast<std::int64_t>(size()) - 1;
  }
  std::size_t size() const { return phases_[0].size(); }
  double fs() const { return fs_; }
  double t0() const { return static_cast<double>(first_) / fs_; }

  bool covers(std::int64_t lo, std::int64_t hi) const {
    return lo >= first_ && hi <= last_index();
  }
  // Contiguous view of samples [lo, lo + count) of one phase. Caller checks
  // coverage first.
  std::span<const double> view(std::size_t phase, std::int64_t lo,
                               std::size_t count) const;
  std::span<const double> phase(std::size_t p) const { return phases_[p]; }

  // Copy with every sample multiplied by factor.
  SampleBlock scaled(double factor) const;

 private:
  std::int64_t first_;
  double fs_;
  std::array<std::vector<double>, kPhases> phases_;
};

// x_p(t) = sqrt(2) A(t) cos(2 pi f0 t + phase(t) - 2 pi p / 3) for n samples
// starting at sample index first_index. Throws RangeError when any instant
// leaves the ground-truth domain.
SampleBlock synth_three_phase(const GroundTruth& gt, std::int64_t first_index,
                              std::size_t n);

// Same, starting at t0 seconds. t0 must sit on the sample grid.
SampleBlock synth_three_phase(const GroundTruth& gt, double t0, std::size_t n);

// The whole domain of gt.
SampleBlock synth_three_phase(const GroundTruth& gt);

}  // namespace adaptrr

#endif  // ADAPTRR_WAVEFORM_HPP
