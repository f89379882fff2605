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

#ifndef ADAPTRR_DECIMATOR_HPP
#define ADAPTRR_DECIMATOR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "adaptrr/triplet.hpp"

namespace adaptrr {

// Normalization factors for the prediction deviations. A deviation of
// exactly one threshold is tolerated; anything above it forces a report.
struct Thresholds {
  double delta_tve = 1e-3;  // relative phasor deviation (0.1 %)
  double delta_fe = 1e-3;   // Hz
  double delta_rfe = 0.07;  // Hz/s

  // Throws InvalidInput unless all three are finite and > 0.
  void validate() const;
};

// Receiver-side extrapolation from one report over a horizon dt >= 0:
// amplitude held, angle advanced by the frequency offset plus half the
// ROCOF term, frequency extrapolated linearly, ROCOF held.
struct Prediction {
  Complex phasor;
  double frequency;
  double rocof;
};

// Throws InvalidInput for negative dt.
Prediction predict(const MeasurementTriplet& last, double dt, double f0);

enum class BindingQuantity { kNone, kFirst, kPhasor, kFrequency, kRocof };

std::string_view to_string(BindingQuantity q);

struct DecisionRecord {
  double t = 0.0;
  bool kept = false;
  std::array<double, 3> epsilon{};  // phasor, frequency, ROCOF
  BindingQuantity binding = BindingQuantity::kNone;
};

struct DecimatorState {
  MeasurementTriplet last_kept;
  double last_kept_time = 0.0;
};

// Normalized deviations of incoming against the prediction from
// state.last_kept. A zero last-kept phasor yields +inf in the first slot.
// Throws SequencingError unless incoming.t > state.last_kept_time.
std::array<double, 3> epsilon(const DecimatorState& state,
                              const MeasurementTriplet& incoming,
                              const Thresholds& thresholds, double f0);

// One Keep/Discard step. The state is replaced by incoming when kept and
// returned unchanged otherwise.
std::pair<DecisionRecord, DecimatorState> decide(const DecimatorState& state,
                                                 const MeasurementTriplet& incoming,
                                                 const Thresholds& thresholds,
                                                 double f0);

// Streaming form of decide(): the first triplet is always kept, every later
// one is kept when the infinity norm of its deviation vector exceeds 1.
class AdaptiveDecimator {
 public:
  AdaptiveDecimator(Thresholds thresholds, double f0);

  DecisionRecord push(const MeasurementTriplet& incoming);

  const std::optional<DecimatorState>& state() const { return state_; }
  const Thresholds& thresholds() const { return thresholds_; }
  void reset() { state_.reset(); }

 private:
  Thresholds thresholds_;
  double f0_;
  std::optional<DecimatorState> state_;
};

// Runs a fresh AdaptiveDecimator over a whole stream.
std::vector<DecisionRecord> decimate(std::span<const MeasurementTriplet> stream,
                                     const Thresholds& thresholds, double f0);

// Kept triplets selected by a decision sequence (same length as stream).
std::vector<MeasurementTriplet> kept_triplets(
    std::span<const MeasurementTriplet> stream,
    std::span<const DecisionRecord> decisions);

// Receiver-side view of a kept sequence, queried at nondecreasing instants:
// the kept triplet itself when t lands within half a sample period of its
// timestamp, otherwise the prediction from the most recent kept triplet.
class Reconstructor {
 public:
  // Throws RangeError for an empty kept list.
  Reconstructor(std::span<const MeasurementTriplet> kept, double f0, double fs);

  // Throws RangeError before the first kept triplet.
  MeasurementTriplet at(double t);

 private:
  std::span<const MeasurementTriplet> kept_;
  double f0_;
  double half_ts_;
  std::size_t current_ = 0;
};

// Reconstructor over a list of instants. query_times must be nondecreasing.
std::vector<MeasurementTriplet> reconstruct(std::span<const MeasurementTriplet> kept,
                                            std::span<const double> query_times,
                                            double f0, double fs);

// Same over the sample grid n / fs for n in [first_sample, last_sample].
std::vector<MeasurementTriplet> reconstruct_grid(
    std::span<const MeasurementTriplet> kept, std::int64_t first_sample,
    std::int64_t last_sample, double f0, double fs);

}  // namespace adaptrr

#endif  // ADAPTRR_DECIMATOR_HPP
