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

#include "adaptrr/estimators.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

namespace adaptrr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t integer_ratio(double num, double den, const char* what) {
  const double q = num / den;
  const double r = std::round(q);
  if (!(r >= 1.0) || std::abs(q - r) > 1e-9 * r) {
    throw InvalidInput(fmt::format("{} = {} / {} is not a positive integer",
                                   what, num, den));
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t k = a % m;
  return k < 0 ? k + m : k;
}

// sin(pi x) that is exactly zero at integers.
double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  return std::sin(kPi * r);
}

class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Fractional bin offset from three Hann-windowed DFT magnitudes.
double hann_three_point(double lower, double centre, double upper) {
  const double den = lower + 2.0 * centre + upper;
  if (den == 0.0) return 0.0;
  return 2.0 * (upper - lower) / den;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(f0 > 0.0) || !std::isfinite(f0)) throw InvalidInput("f0 must be positive");
  if (!(fs > 0.0) || !std::isfinite(fs)) throw InvalidInput("fs must be positive");
  if (!(internal_rate > 0.0) || !std::isfinite(internal_rate)) {
    throw InvalidInput("internal rate must be positive");
  }
  (void)samples_per_cycle();
  (void)report_step();
}

std::int64_t EstimatorConfig::samples_per_cycle() const {
  return integer_ratio(fs, f0, "samples per cycle fs/f0");
}

std::int64_t EstimatorConfig::report_step() const {
  return integer_ratio(fs, internal_rate, "report step fs/internal_rate");
}

Complex fortescue_positive(const std::array<Complex, 3>& phasors) {
  const Complex a = std::polar(1.0, kTwoPi / 3.0);
  const Complex a2 = std::polar(1.0, -kTwoPi / 3.0);
  return (phasors[0] + a * phasors[1] + a2 * phasors[2]) / 3.0;
}

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kPIec:
      return "p_iec";
    case EstimatorKind::kIIpDft:
      return "i_ipdft";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "p_iec") return EstimatorKind::kPIec;
  if (name == "i_ipdft") return EstimatorKind::kIIpDft;
  throw InvalidInput(fmt::format("unknown estimator '{}' (expected p_iec or i_ipdft)",
                                 name));
}

// --- Estimator -------------------------------------------------------------

Estimator::Estimator(EstimatorConfig config) : config_(config) {
  config_.validate();
}

void Estimator::require_coverage(const SampleBlock& block,
                                 std::int64_t report_index) const {
  if (!block.covers(report_index - lead(), report_index + lag())) {
    throw InvalidInput(fmt::format(
        "{}: report at sample {} needs samples [{}, {}], block holds [{}, {}]",
        name(), report_index, report_index - lead(), report_index + lag(),
        block.first_index(), block.last_index()));
  }
  if (block.fs() != config_.fs) {
    throw InvalidInput(fmt::format("{}: block sampled at {} Hz, estimator at {} Hz",
                                   name(), block.fs(), config_.fs));
  }
}

std::vector<MeasurementTriplet> Estimator::run(const SampleBlock& block,
                                               std::int64_t first_report,
                                               std::size_t count) const {
  const std::int64_t step = config_.report_step();
  std::vector<MeasurementTriplet> out;
  out.reserve(count);
  for (std::size_t h = 0; h < count; ++h) {
    out.push_back(estimate(block, first_report + static_cast<std::int64_t>(h) * step));
  }
  return out;
}

// --- P-IEC -----------------------------------------------------------------

PIecEstimator::PIecEstimator(EstimatorConfig config)
    : Estimator(config),
      m_(config_.samples_per_cycle()),
      half_taps_(m_ - 1) {
  const std::int64_t taps = 2 * m_ - 1;
  taps_.resize(static_cast<std::size_t>(taps));
  double sum = 0.0;
  for (std::int64_t n = 0; n < taps; ++n) {
    const double w = 1.0 - static_cast<double>(std::abs(n - (m_ - 1))) /
                               static_cast<double>(m_);
    taps_[static_cast<std::size_t>(n)] = w;
    sum += w;
  }
  for (double& w : taps_) w /= sum;

  mixer_.resize(static_cast<std::size_t>(m_));
  for (std::int64_t k = 0; k < m_; ++k) {
    mixer_[static_cast<std::size_t>(k)] = std::polar(
        std::numbers::sqrt2,
        -kTwoPi * static_cast<double>(k) / static_cast<double>(m_));
  }
}

double PIecEstimator::filter_gain(double df) const {
  const double x = df / config_.fs;  // cycles per sample
  const double den = static_cast<double>(m_) * std::sin(kPi * x);
  if (den == 0.0) return 1.0;
  const double ratio = std::sin(kPi * x * static_cast<double>(m_)) / den;
  return ratio * ratio;
}

std::vector<Complex> PIecEstimator::demodulated(const SampleBlock& block, std::int64_t lo,
                                                std::size_t count) const {
  // Positive-sequence combination first: the filter is linear, so this equals
  // filtering each phase and combining afterwards.
  static const std::array<Complex, 3> kWeights{
      Complex(1.0 / 3.0, 0.0), std::polar(1.0 / 3.0, kTwoPi / 3.0),
      std::polar(1.0 / 3.0, -kTwoPi / 3.0)};
  std::array<std::span<const double>, 3> x{};
  for (std::size_t p = 0; p < SampleBlock::kPhases; ++p) x[p] = block.view(p, lo, count);
  std::vector<Complex> u(count);
  std::size_t k = static_cast<std::size_t>(mod(lo, m_));
  for (std::size_t i = 0; i < count; ++i) {
    const Complex s = kWeights[0] * x[0][i] + kWeights[1] * x[1][i] + kWeights[2] * x[2][i];
    u[i] = s * mixer_[k];
    if (++k == mixer_.size()) k = 0;
  }
  return u;
}

Complex PIecEstimator::raw_positive_sequence(const SampleBlock& block,
                                             std::int64_t index) const {
  const auto u = demodulated(block, index - half_taps_, taps_.size());
  Complex z = 0.0;
  for (std::size_t i = 0; i < taps_.size(); ++i) z += taps_[i] * u[i];
  return z;
}

MeasurementTriplet PIecEstimator::estimate(const SampleBlock& block,
                                           std::int64_t report_index) const {
  require_coverage(block, report_index);
  // u[i] holds sample report_index - M + i, i = 0..2M.
  const auto m = static_cast<std::size_t>(m_);
  const auto u = demodulated(block, report_index - m_, 2 * m + 1);

  Complex centre = 0.0;
  for (std::size_t i = 0; i < taps_.size(); ++i) centre += taps_[i] * u[i + 1];

  // The triangular filter is two stacked M-sample boxcars, so its first
  // difference is a difference of adjacent boxcar sums and its second
  // difference touches three samples. Building the increments this way
  // avoids subtracting nearly equal angles.
  Complex ahead = 0.0;   // sum of u over (n, n + M]
  Complex behind = 0.0;  // sum of u over (n - M, n]
  for (std::size_t i = 1; i <= m; ++i) {
    ahead += u[m + i];
    behind += u[i];
  }
  const double mm = static_cast<double>(m_) * static_cast<double>(m_);
  const Complex fwd = (ahead - behind) / mm;                // z(n+1) - z(n)
  const Complex curv = (u[2 * m] - 2.0 * u[m] + u[0]) / mm;  // second difference
  const Complex back = fwd - curv;                           // z(n) - z(n-1)

  const Complex alpha = fwd / centre;    // z(n+1) / z(n) - 1
  const Complex beta = -back / centre;   // z(n-1) / z(n) - 1, alpha + beta = curv / centre

  // arg(z(n+1) / z(n-1)) and arg(z(n+1) z(n-1) / z(n)^2), both as the angle
  // of 1 + w with a small w.
  const auto angle_of_one_plus = [](Complex w) {
    return std::atan2(w.imag(), 1.0 + w.real());
  };
  const double span = angle_of_one_plus((alpha - beta) / (1.0 + beta));
  const double bend = angle_of_one_plus(curv / centre + alpha * beta);

  const double ts = config_.sample_period();
  MeasurementTriplet out;
  out.t = static_cast<double>(report_index) / config_.fs;
  out.frequency = config_.f0 + span / (2.0 * kTwoPi * ts);
  out.rocof = bend / (kTwoPi * ts * ts);
  out.phasor = centre / filter_gain(out.frequency - config_.f0);
  return out;
}

// --- i-IpDFT ---------------------------------------------------------------

IIpDftEstimator::IIpDftEstimator(EstimatorConfig config, int iterations)
    : Estimator(config),
      iterations_(iterations),
      m_(config_.samples_per_cycle()),
      window_(3 * m_),
      step_(config_.report_step()),
      nominal_bin_(3) {
  if (iterations_ < 0) throw InvalidInput("i-IpDFT iteration count must be >= 0");
  const auto n = static_cast<std::size_t>(window_);
  hann_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    hann_[m] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(m) /
                                    static_cast<double>(window_));
  }
  for (std::size_t b = 0; b < twiddle_.size(); ++b) {
    const auto k = static_cast<double>(nominal_bin_ - 2 + static_cast<std::int64_t>(b));
    twiddle_[b].resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      // Reduce k*m modulo N before scaling to keep the angle small.
      const auto km = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(m);
      twiddle_[b][m] = std::polar(
          1.0, -kTwoPi * static_cast<double>(mod(km, window_)) /
                   static_cast<double>(window_));
    }
  }
}

Complex IIpDftEstimator::kernel(double nu) const {
  const double n = static_cast<double>(window_);
  // Dirichlet sum D(v) = sum_m exp(j 2 pi v m / N).
  auto dirichlet = [n](double v) {
    const double den = sin_pi(v / n);
    const double mag = den == 0.0 ? n : sin_pi(v) / den;
    return std::polar(1.0, kPi * v * (n - 1.0) / n) * mag;
  };
  return 0.5 * dirichlet(nu) - 0.25 * dirichlet(nu + 1.0) -
         0.25 * dirichlet(nu - 1.0);
}

IIpDftEstimator::PhaseEstimate IIpDftEstimator::analyze_phase(
    std::span<const double> x, std::int64_t report_index) const {
  const auto n = static_cast<std::size_t>(window_);

  // Compensated sums: the terms oscillate and are much larger than the
  // result, and the fractional offset is read from ratios of these bins.
  std::array<NeumaierSum, 5> re{};
  std::array<NeumaierSum, 5> im{};
  double energy = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double v = hann_[m] * x[m];
    energy += std::abs(v);
    for (std::size_t b = 0; b < re.size(); ++b) {
      re[b].add(v * twiddle_[b][m].real());
      im[b].add(v * twiddle_[b][m].imag());
    }
  }
  std::array<Complex, 5> bins{};
  for (std::size_t b = 0; b < bins.size(); ++b) bins[b] = Complex(re[b].value(), im[b].value());

  // Peak among the three bins around the nominal one; its neighbours are
  // then all inside the computed set.
  std::size_t peak = 2;
  for (std::size_t b = 1; b <= 3; ++b) {
    if (std::abs(bins[b]) > std::abs(bins[peak])) peak = b;
  }
  if (std::abs(bins[peak]) <= 1e-12 * energy) {
    throw DegenerateSignal("i-IpDFT: no fundamental component in window");
  }
  const double k = static_cast<double>(nominal_bin_ - 2 + static_cast<std::int64_t>(peak));
  const std::array<Complex, 3> raw{bins[peak - 1], bins[peak], bins[peak + 1]};

  double delta = hann_three_point(std::abs(raw[0]), std::abs(raw[1]), std::abs(raw[2]));
  double lambda = k + delta;
  Complex amp = raw[1] / kernel(lambda - k);

  for (int it = 0; it < iterations_; ++it) {
    std::array<double, 3> mags{};
    for (int j = -1; j <= 1; ++j) {
      const Complex image = std::conj(amp) * kernel(-lambda - (k + j));
      mags[static_cast<std::size_t>(j + 1)] =
          std::abs(raw[static_cast<std::size_t>(j + 1)] - image);
    }
    delta = hann_three_point(mags[0], mags[1], mags[2]);
    lambda = k + delta;
    const Complex image_k = std::conj(amp) * kernel(-lambda - k);
    amp = (raw[1] - image_k) / kernel(lambda - k);
  }

  // amp is the positive-frequency coefficient at the first window sample;
  // advance it to the centre (N/2 samples, i.e. pi*lambda) and move into the
  // nominal rotating frame at the reporting sample.
  const double nominal_angle =
      kTwoPi * static_cast<double>(mod(report_index, m_)) / static_cast<double>(m_);
  const double advance = kTwoPi * lambda * static_cast<double>(window_ / 2) /
                         static_cast<double>(window_);
  PhaseEstimate est;
  est.phasor = std::numbers::sqrt2 * amp * std::polar(1.0, advance - nominal_angle);
  const double bin_hz = config_.fs / static_cast<double>(window_);
  est.offset = (static_cast<double>(static_cast<std::int64_t>(k) - nominal_bin_) + delta) * bin_hz;
  est.frequency = config_.f0 + est.offset;
  est.delta = delta;
  return est;
}

IIpDftEstimator::Frame IIpDftEstimator::analyze(const SampleBlock& block,
                                                std::int64_t report_index) const {
  const std::int64_t lo = report_index - window_ / 2;
  if (!block.covers(lo, lo + window_ - 1)) {
    throw InvalidInput(fmt::format(
        "i_ipdft: window at sample {} needs [{}, {}], block holds [{}, {}]",
        report_index, lo, lo + window_ - 1, block.first_index(), block.last_index()));
  }
  Frame frame{};
  std::array<Complex, 3> phasors{};
  double offset_sum = 0.0;
  for (std::size_t p = 0; p < SampleBlock::kPhases; ++p) {
    frame.phases[p] = analyze_phase(
        block.view(p, lo, static_cast<std::size_t>(window_)), report_index);
    phasors[p] = frame.phases[p].phasor;
    offset_sum += frame.phases[p].offset;
  }
  frame.positive_sequence = fortescue_positive(phasors);
  frame.offset = offset_sum / 3.0;
  frame.frequency = config_.f0 + frame.offset;
  return frame;
}

MeasurementTriplet IIpDftEstimator::estimate(const SampleBlock& block,
                                             std::int64_t report_index) const {
  require_coverage(block, report_index);
  const Frame previous = analyze(block, report_index - step_);
  const Frame current = analyze(block, report_index);
  MeasurementTriplet out;
  out.t = static_cast<double>(report_index) / config_.fs;
  out.phasor = current.positive_sequence;
  out.frequency = current.frequency;
  out.rocof = (current.offset - previous.offset) * config_.internal_rate;
  return out;
}

std::vector<MeasurementTriplet> IIpDftEstimator::run(const SampleBlock& block,
                                                     std::int64_t first_report,
                                                     std::size_t count) const {
  std::vector<MeasurementTriplet> out;
  if (count == 0) return out;
  require_coverage(block, first_report);
  require_coverage(block, first_report + static_cast<std::int64_t>(count - 1) * step_);

  // Frames are independent; ROCOF is a backward-difference post-pass.
  std::vector<Frame> frames;
  frames.reserve(count + 1);
  for (std::size_t h = 0; h <= count; ++h) {
    frames.push_back(analyze(block, first_report + (static_cast<std::int64_t>(h) - 1) * step_));
  }
  out.reserve(count);
  for (std::size_t h = 0; h < count; ++h) {
    const Frame& cur = frames[h + 1];
    MeasurementTriplet t;
    t.t = static_cast<double>(first_report + static_cast<std::int64_t>(h) * step_) /
          config_.fs;
    t.phasor = cur.positive_sequence;
    t.frequency = cur.frequency;
    t.rocof = (cur.offset - frames[h].offset) * config_.internal_rate;
    out.push_back(t);
  }
  return out;
}

// --- factory and driver ----------------------------------------------------

std::unique_ptr<Estimator> make_estimator(const EstimatorSpec& spec,
                                          const EstimatorConfig& config) {
  switch (spec.kind) {
    case EstimatorKind::kPIec:
      return std::make_unique<PIecEstimator>(config);
    case EstimatorKind::kIIpDft:
      return std::make_unique<IIpDftEstimator>(config, spec.ipdft_iterations);
  }
  throw InvalidInput("unknown estimator kind");
}

namespace {

struct ReportGrid {
  std::int64_t first;
  std::size_t count;
};

ReportGrid report_grid(const EstimatorConfig& config, double t_start, double t_end) {
  const double pos = t_start * config.fs;
  const double first = std::round(pos);
  if (std::abs(pos - first) > 1e-6) {
    throw InvalidInput(fmt::format("t_start = {} s is not on the sample grid", t_start));
  }
  if (!(t_end >= t_start)) throw InvalidInput("t_end precedes t_start");
  const auto step = config.report_step();
  const auto span = static_cast<std::int64_t>(std::floor((t_end - t_start) * config.fs + 1e-6));
  return {static_cast<std::int64_t>(first), static_cast<std::size_t>(span / step + 1)};
}

}  // namespace

std::vector<MeasurementTriplet> run_estimator(const EstimatorSpec& spec,
                                              const SampleBlock& block,
                                              const EstimatorConfig& config,
                                              double t_start, double t_end) {
  const auto est = make_estimator(spec, config);
  const auto grid = report_grid(config, t_start, t_end);
  const std::int64_t last =
      grid.first + static_cast<std::int64_t>(grid.count - 1) * config.report_step();
  if (!block.covers(grid.first - est->lead(), last + est->lag())) {
    throw InvalidInput(fmt::format(
        "range [{}, {}] s too small for {} windows: needs samples [{}, {}], "
        "have [{}, {}]",
        t_start, t_end, est->name(), grid.first - est->lead(), last + est->lag(),
        block.first_index(), block.last_index()));
  }
  return est->run(block, grid.first, grid.count);
}

std::vector<MeasurementTriplet> run_estimator(const EstimatorSpec& spec,
                                              const GroundTruth& gt,
                                              const EstimatorConfig& config,
                                              double t_start, double t_end) {
  const auto est = make_estimator(spec, config);
  const auto grid = report_grid(config, t_start, t_end);
  const std::int64_t last =
      grid.first + static_cast<std::int64_t>(grid.count - 1) * config.report_step();
  const std::int64_t lo = grid.first - est->lead();
  const std::int64_t hi = last + est->lag();
  if (lo < gt.first_sample() || hi > gt.last_sample()) {
    throw InvalidInput(fmt::format(
        "range [{}, {}] s too small for {} windows inside the signal domain "
        "[{}, {}] s",
        t_start, t_end, est->name(), gt.domain_begin(), gt.domain_end()));
  }
  const auto block = synth_three_phase(gt, lo, static_cast<std::size_t>(hi - lo + 1));
  return est->run(block, grid.first, grid.count);
}

}  // namespace adaptrr
