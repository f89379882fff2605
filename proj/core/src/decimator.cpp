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

#include "adaptrr/decimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

namespace adaptrr {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void Thresholds::validate() const {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(delta_tve) || !ok(delta_fe) || !ok(delta_rfe)) {
    throw InvalidInput(fmt::format(
        "thresholds must be finite and positive (tve={}, fe={}, rfe={})",
        delta_tve, delta_fe, delta_rfe));
  }
}

Prediction predict(const MeasurementTriplet& last, double dt, double f0) {
  if (!(dt >= 0.0)) {
    throw InvalidInput(fmt::format("prediction horizon must be >= 0, got {}", dt));
  }
  const double angle =
      2.0 * kPi * (last.frequency - f0) * dt + kPi * last.rocof * dt * dt;
  return Prediction{last.phasor * std::polar(1.0, angle),
                    last.frequency + last.rocof * dt, last.rocof};
}

std::string_view to_string(BindingQuantity q) {
  switch (q) {
    case BindingQuantity::kNone:
      return "none";
    case BindingQuantity::kFirst:
      return "first";
    case BindingQuantity::kPhasor:
      return "phasor";
    case BindingQuantity::kFrequency:
      return "frequency";
    case BindingQuantity::kRocof:
      return "rocof";
  }
  return "none";
}

std::array<double, 3> epsilon(const DecimatorState& state,
                              const MeasurementTriplet& incoming,
                              const Thresholds& thresholds, double f0) {
  if (!(incoming.t > state.last_kept_time)) {
    throw SequencingError(fmt::format(
        "triplet at t = {} s does not follow the last kept one at t = {} s",
        incoming.t, state.last_kept_time));
  }
  const Prediction p = predict(state.last_kept, incoming.t - state.last_kept_time, f0);
  const double ref = std::abs(state.last_kept.phasor);
  std::array<double, 3> e{};
  e[0] = ref == 0.0 ? std::numeric_limits<double>::infinity()
                    : std::abs(p.phasor - incoming.phasor) / (thresholds.delta_tve * ref);
  e[1] = std::abs(p.frequency - incoming.frequency) / thresholds.delta_fe;
  e[2] = std::abs(p.rocof - incoming.rocof) / thresholds.delta_rfe;
  return e;
}

std::pair<DecisionRecord, DecimatorState> decide(const DecimatorState& state,
                                                 const MeasurementTriplet& incoming,
                                                 const Thresholds& thresholds,
                                                 double f0) {
  DecisionRecord rec;
  rec.t = incoming.t;
  rec.epsilon = epsilon(state, incoming, thresholds, f0);
  const auto it = std::max_element(rec.epsilon.begin(), rec.epsilon.end());
  rec.kept = *it > 1.0;
  if (!rec.kept) return {rec, state};

  static constexpr std::array<BindingQuantity, 3> kOrder{
      BindingQuantity::kPhasor, BindingQuantity::kFrequency, BindingQuantity::kRocof};
  rec.binding = kOrder[static_cast<std::size_t>(it - rec.epsilon.begin())];
  return {rec, DecimatorState{incoming, incoming.t}};
}

AdaptiveDecimator::AdaptiveDecimator(Thresholds thresholds, double f0)
    : thresholds_(thresholds), f0_(f0) {
  thresholds_.validate();
}

DecisionRecord AdaptiveDecimator::push(const MeasurementTriplet& incoming) {
  if (!state_) {
    state_ = DecimatorState{incoming, incoming.t};
    DecisionRecord rec;
    rec.t = incoming.t;
    rec.kept = true;
    rec.binding = BindingQuantity::kFirst;
    return rec;
  }
  auto [rec, next] = decide(*state_, incoming, thresholds_, f0_);
  state_ = next;
  return rec;
}

std::vector<DecisionRecord> decimate(std::span<const MeasurementTriplet> stream,
                                     const Thresholds& thresholds, double f0) {
  AdaptiveDecimator dec(thresholds, f0);
  std::vector<DecisionRecord> out;
  out.reserve(stream.size());
  for (const auto& m : stream) out.push_back(dec.push(m));
  return out;
}

std::vector<MeasurementTriplet> kept_triplets(
    std::span<const MeasurementTriplet> stream,
    std::span<const DecisionRecord> decisions) {
  if (stream.size() != decisions.size()) {
    throw InvalidInput("stream and decision sequence differ in length");
  }
  std::vector<MeasurementTriplet> out;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (decisions[i].kept) out.push_back(stream[i]);
  }
  return out;
}

Reconstructor::Reconstructor(std::span<const MeasurementTriplet> kept, double f0,
                             double fs)
    : kept_(kept), f0_(f0), half_ts_(0.5 / fs) {
  if (kept_.empty()) throw RangeError("reconstruction needs at least one kept triplet");
}

MeasurementTriplet Reconstructor::at(double t) {
  if (t < kept_.front().t - half_ts_) {
    throw RangeError(fmt::format(
        "query at t = {} s precedes the first kept triplet at t = {} s", t,
        kept_.front().t));
  }
  while (current_ + 1 < kept_.size() && kept_[current_ + 1].t <= t + half_ts_) ++current_;
  const MeasurementTriplet& base = kept_[current_];
  if (std::abs(t - base.t) <= half_ts_) return base;
  const Prediction p = predict(base, t - base.t, f0_);
  return MeasurementTriplet{t, p.phasor, p.frequency, p.rocof};
}

std::vector<MeasurementTriplet> reconstruct(std::span<const MeasurementTriplet> kept,
                                            std::span<const double> query_times,
                                            double f0, double fs) {
  Reconstructor view(kept, f0, fs);
  std::vector<MeasurementTriplet> out;
  out.reserve(query_times.size());
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : query_times) {
    if (t < prev) throw InvalidInput("query times must be nondecreasing");
    prev = t;
    out.push_back(view.at(t));
  }
  return out;
}

std::vector<MeasurementTriplet> reconstruct_grid(
    std::span<const MeasurementTriplet> kept, std::int64_t first_sample,
    std::int64_t last_sample, double f0, double fs) {
  if (last_sample < first_sample) return {};
  Reconstructor view(kept, f0, fs);
  std::vector<MeasurementTriplet> out;
  out.reserve(static_cast<std::size_t>(last_sample - first_sample + 1));
  for (std::int64_t n = first_sample; n <= last_sample; ++n) {
    out.push_back(view.at(static_cast<double>(n) / fs));
  }
  return out;
}

}  // namespace adaptrr
