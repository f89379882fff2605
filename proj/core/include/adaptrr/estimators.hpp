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

#ifndef ADAPTRR_ESTIMATORS_HPP
#define ADAPTRR_ESTIMATORS_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptrr/triplet.hpp"
#include "adaptrr/waveform.hpp"

namespace adaptrr {

// Sampling and reporting setup shared by every estimator.
struct EstimatorConfig {
  double f0 = 50.0;              // rated frequency, Hz
  double fs = 10000.0;           // sample rate, Hz
  double internal_rate = 100.0;  // reports per second before decimation

  // Throws InvalidInput unless fs / f0 and fs / internal_rate are integers.
  void validate() const;
  // M, samples per nominal cycle.
  std::int64_t samples_per_cycle() const;
  // r, samples between consecutive internal reports.
  std::int64_t report_step() const;
  double sample_period() const { return 1.0 / fs; }
};

// (Xa + a Xb + a^2 Xc) / 3 with a = exp(j 2 pi / 3).
Complex fortescue_positive(const std::array<Complex, 3>& phasors);

enum class EstimatorKind { kPIec, kIIpDft };

std::string_view to_string(EstimatorKind kind);
// Accepts "p_iec" and "i_ipdft". Throws InvalidInput otherwise.
EstimatorKind parse_estimator_kind(std::string_view name);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kPIec;
  int ipdft_iterations = 3;
};

// Common interface for synchrophasor/frequency/ROCOF estimators that report
// on the absolute sample grid. Implementations are stateless after
// construction, so estimate() may be called concurrently.
class Estimator {
 public:
  virtual ~Estimator() = default;

  virtual std::string_view name() const = 0;

  // Samples required before and after the reporting sample.
  virtual std::int64_t lead() const = 0;
  virtual std::int64_t lag() const = 0;

  // Triplet timestamped at sample report_index. Throws InvalidInput when the
  // block does not cover [report_index - lead(), report_index + lag()].
  virtual MeasurementTriplet estimate(const SampleBlock& block,
                                      std::int64_t report_index) const = 0;

  // count reports spaced by the internal report step, starting at
  // first_report. Must equal repeated estimate() calls bit for bit.
  virtual std::vector<MeasurementTriplet> run(const SampleBlock& block,
                                              std::int64_t first_report,
                                              std::size_t count) const;

  const EstimatorConfig& config() const { return config_; }

 protected:
  explicit Estimator(EstimatorConfig config);
  void require_coverage(const SampleBlock& block, std::int64_t report_index) const;

  EstimatorConfig config_;
};

// Demodulation at f0 followed by a unit-DC-gain triangular FIR of 2M-1 taps,
// evaluated sample by sample around the reporting instant. Frequency and
// ROCOF come from symmetric first and second differences of the positive
// sequence angle with step 1/fs.
class PIecEstimator final : public Estimator {
 public:
  explicit PIecEstimator(EstimatorConfig config);

  std::string_view name() const override { return "p_iec"; }
  std::int64_t lead() const override { return half_taps_ + 1; }
  std::int64_t lag() const override { return half_taps_ + 1; }

  MeasurementTriplet estimate(const SampleBlock& block,
                              std::int64_t report_index) const override;

  // Positive-sequence filter output at one sample, before the off-nominal
  // gain compensation.
  Complex raw_positive_sequence(const SampleBlock& block,
                                std::int64_t index) const;

  // Magnitude response of the normalized triangular filter at a frequency
  // offset df from f0.
  double filter_gain(double df) const;

  std::span<const double> taps() const { return taps_; }

 private:
  // Positive-sequence combination of the mixed samples [lo, lo + count).
  std::vector<Complex> demodulated(const SampleBlock& block, std::int64_t lo,
                                   std::size_t count) const;

  std::int64_t m_;
  std::int64_t half_taps_;  // M - 1
  std::vector<double> taps_;
  std::vector<Complex> mixer_;  // sqrt(2) exp(-j 2 pi k / M), k = 0..M-1
};

// Iterative interpolated DFT over a three-cycle Hann window. Per phase the
// fractional bin offset comes from the three-point Hann formula; the
// negative-frequency image is modelled from the current estimate and removed
// from the three bins on every iteration. ROCOF is the backward difference of
// the node frequency against the previous internal report.
class IIpDftEstimator final : public Estimator {
 public:
  IIpDftEstimator(EstimatorConfig config, int iterations);

  struct PhaseEstimate {
    Complex phasor;    // rms, nominal frame, referred to the reporting sample
    double frequency;  // Hz
    double offset;     // frequency - f0, Hz
    double delta;      // fractional bin offset of the final iteration
  };

  struct Frame {
    std::array<PhaseEstimate, 3> phases;
    Complex positive_sequence;
    double frequency;  // mean of the per-phase frequencies
    double offset;     // frequency - f0; ROCOF differences these
  };

  std::string_view name() const override { return "i_ipdft"; }
  std::int64_t lead() const override { return window_ / 2 + step_; }
  std::int64_t lag() const override { return window_ - 1 - window_ / 2; }

  MeasurementTriplet estimate(const SampleBlock& block,
                              std::int64_t report_index) const override;
  std::vector<MeasurementTriplet> run(const SampleBlock& block,
                                      std::int64_t first_report,
                                      std::size_t count) const override;

  // Everything but ROCOF at one reporting sample. Needs window/2 samples
  // before and window/2 - 1 after.
  Frame analyze(const SampleBlock& block, std::int64_t report_index) const;

  // Hann spectrum kernel sum_m w[m] exp(j 2 pi nu m / N).
  Complex kernel(double nu) const;

  int iterations() const { return iterations_; }
  std::int64_t window_length() const { return window_; }

 private:
  PhaseEstimate analyze_phase(std::span<const double> x,
                              std::int64_t report_index) const;

  int iterations_;
  std::int64_t m_;
  std::int64_t window_;  // N = 3M
  std::int64_t step_;    // samples between internal reports
  std::int64_t nominal_bin_;
  std::vector<double> hann_;
  // exp(-j 2 pi k m / N) for k = nominal_bin - 2 .. nominal_bin + 2.
  std::array<std::vector<Complex>, 5> twiddle_;
};

std::unique_ptr<Estimator> make_estimator(const EstimatorSpec& spec,
                                          const EstimatorConfig& config);

// Reports at t_start + h / internal_rate, h = 0, 1, ... up to t_end
// inclusive. t_start must sit on the sample grid.
std::vector<MeasurementTriplet> run_estimator(const EstimatorSpec& spec,
                                              const SampleBlock& block,
                                              const EstimatorConfig& config,
                                              double t_start, double t_end);

// Same, synthesizing exactly the samples the windows need from gt.
std::vector<MeasurementTriplet> run_estimator(const EstimatorSpec& spec,
                                              const GroundTruth& gt,
                                              const EstimatorConfig& config,
                                              double t_start, double t_end);

}  // namespace adaptrr

#endif  // ADAPTRR_ESTIMATORS_HPP
