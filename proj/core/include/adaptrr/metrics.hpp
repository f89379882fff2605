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

#ifndef ADAPTRR_METRICS_HPP
#define ADAPTRR_METRICS_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "adaptrr/decimator.hpp"
#include "adaptrr/triplet.hpp"
#include "adaptrr/waveform.hpp"

namespace adaptrr {

// Total vector error in percent. Throws UndefinedMetric for a zero reference.
double tve(Complex estimate, Complex reference);
// Frequency error in mHz.
double fe(double estimate, double reference);
// ROCOF error in Hz/s.
double rfe(double estimate, double reference);

// kRms: square inside the mean, root outside (rms of the point-wise errors).
// kPrinted: root of the mean of the absolute point-wise errors, kept for
// auditing against the non-squared form of the index.
enum class TreFormula { kRms, kPrinted };

std::string_view to_string(TreFormula f);
TreFormula parse_tre_formula(std::string_view name);

struct TrackingIndices {
  double tve = 0.0;  // percent
  double fe = 0.0;   // mHz
  double rfe = 0.0;  // Hz/s

  friend bool operator==(const TrackingIndices&, const TrackingIndices&) = default;
};

// Running sums for the tracking-error indices. Partitions of a long grid
// can be accumulated separately and merged.
class TrackingAccumulator {
 public:
  void add(const MeasurementTriplet& reconstructed, const MeasurementTriplet& reference);
  void merge(const TrackingAccumulator& other);

  std::size_t count() const { return count_; }
  // Throws InvalidInput when nothing was accumulated.
  TrackingIndices result(TreFormula formula = TreFormula::kRms) const;

 private:
  std::size_t count_ = 0;
  double tve_sq_ = 0.0, fe_sq_ = 0.0, rfe_sq_ = 0.0;
  double tve_abs_ = 0.0, fe_abs_ = 0.0, rfe_abs_ = 0.0;
};

TrackingIndices tracking_indices(std::span<const MeasurementTriplet> reconstructed,
                                 std::span<const MeasurementTriplet> reference,
                                 TreFormula formula = TreFormula::kRms);

// Reference evaluated from gt at every reconstructed timestamp.
TrackingIndices tracking_indices(std::span<const MeasurementTriplet> reconstructed,
                                 const GroundTruth& gt,
                                 TreFormula formula = TreFormula::kRms);

struct RatePoint {
  double t;   // s, the later of the two kept instants
  double rr;  // fps
};

struct ThroughputStats {
  double compression_ratio = 1.0;
  std::size_t kept_count = 0;
  std::size_t total_count = 0;
  std::vector<RatePoint> instantaneous_rr;
};

// Throws InvalidInput for an empty sequence or one with nothing kept.
ThroughputStats throughput_stats(std::span<const DecisionRecord> decisions);

// Every divisor-th triplet starting from the first. Throws InvalidInput for
// divisor < 1.
std::vector<MeasurementTriplet> fixed_rate_baseline(
    std::span<const MeasurementTriplet> triplets, int divisor);

// Decision records equivalent to fixed_rate_baseline, for throughput_stats
// and the decision log.
std::vector<DecisionRecord> fixed_rate_decisions(
    std::span<const MeasurementTriplet> triplets, int divisor);

struct TrackingReport {
  TrackingIndices indices;
  double compression_ratio = 1.0;
  std::size_t kept_count = 0;
  std::size_t total_count = 0;
  std::vector<RatePoint> instantaneous_rr;
};

}  // namespace adaptrr

#endif  // ADAPTRR_METRICS_HPP
