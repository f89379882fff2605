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

#include "adaptrr/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

namespace adaptrr {

double tve(Complex estimate, Complex reference) {
  const double ref = std::abs(reference);
  if (ref == 0.0) throw UndefinedMetric("TVE against a zero reference phasor");
  return 100.0 * std::abs(estimate - reference) / ref;
}

double fe(double estimate, double reference) { return 1e3 * (estimate - reference); }

double rfe(double estimate, double reference) { return estimate - reference; }

std::string_view to_string(TreFormula f) {
  return f == TreFormula::kRms ? "rms" : "printed";
}

TreFormula parse_tre_formula(std::string_view name) {
  if (name == "rms") return TreFormula::kRms;
  if (name == "printed") return TreFormula::kPrinted;
  throw InvalidInput(fmt::format("unknown tre_formula '{}' (expected rms or printed)", name));
}

void TrackingAccumulator::add(const MeasurementTriplet& reconstructed,
                              const MeasurementTriplet& reference) {
  const double e_tve = tve(reconstructed.phasor, reference.phasor);
  const double e_fe = fe(reconstructed.frequency, reference.frequency);
  const double e_rfe = rfe(reconstructed.rocof, reference.rocof);
  ++count_;
  tve_sq_ += e_tve * e_tve;
  fe_sq_ += e_fe * e_fe;
  rfe_sq_ += e_rfe * e_rfe;
  tve_abs_ += e_tve;
  fe_abs_ += std::abs(e_fe);
  rfe_abs_ += std::abs(e_rfe);
}

void TrackingAccumulator::merge(const TrackingAccumulator& other) {
  count_ += other.count_;
  tve_sq_ += other.tve_sq_;
  fe_sq_ += other.fe_sq_;
  rfe_sq_ += other.rfe_sq_;
  tve_abs_ += other.tve_abs_;
  fe_abs_ += other.fe_abs_;
  rfe_abs_ += other.rfe_abs_;
}

TrackingIndices TrackingAccumulator::result(TreFormula formula) const {
  if (count_ == 0) throw InvalidInput("tracking indices over an empty grid");
  const double n = static_cast<double>(count_);
  if (formula == TreFormula::kRms) {
    return {std::sqrt(tve_sq_ / n), std::sqrt(fe_sq_ / n), std::sqrt(rfe_sq_ / n)};
  }
  return {std::sqrt(tve_abs_ / n), std::sqrt(fe_abs_ / n), std::sqrt(rfe_abs_ / n)};
}

TrackingIndices tracking_indices(std::span<const MeasurementTriplet> reconstructed,
                                 std::span<const MeasurementTriplet> reference,
                                 TreFormula formula) {
  if (reconstructed.size() != reference.size()) {
    throw InvalidInput(fmt::format("reconstruction has {} points, reference {}",
                                   reconstructed.size(), reference.size()));
  }
  TrackingAccumulator acc;
  for (std::size_t i = 0; i < reconstructed.size(); ++i) {
    acc.add(reconstructed[i], reference[i]);
  }
  return acc.result(formula);
}

TrackingIndices tracking_indices(std::span<const MeasurementTriplet> reconstructed,
                                 const GroundTruth& gt, TreFormula formula) {
  TrackingAccumulator acc;
  for (const auto& r : reconstructed) acc.add(r, eval_reference(gt, r.t));
  return acc.result(formula);
}

ThroughputStats throughput_stats(std::span<const DecisionRecord> decisions) {
  if (decisions.empty()) throw InvalidInput("throughput of an empty decision sequence");
  ThroughputStats s;
  s.total_count = decisions.size();
  bool have_prev = false;
  double prev_t = 0.0;
  for (const auto& d : decisions) {
    if (!d.kept) continue;
    ++s.kept_count;
    if (have_prev) s.instantaneous_rr.push_back({d.t, 1.0 / (d.t - prev_t)});
    prev_t = d.t;
    have_prev = true;
  }
  if (s.kept_count == 0) throw InvalidInput("no kept decision in sequence");
  s.compression_ratio =
      static_cast<double>(s.total_count) / static_cast<double>(s.kept_count);
  return s;
}

std::vector<MeasurementTriplet> fixed_rate_baseline(
    std::span<const MeasurementTriplet> triplets, int divisor) {
  if (divisor < 1) throw InvalidInput(fmt::format("divisor must be >= 1, got {}", divisor));
  std::vector<MeasurementTriplet> out;
  out.reserve(triplets.size() / static_cast<std::size_t>(divisor) + 1);
  for (std::size_t i = 0; i < triplets.size(); i += static_cast<std::size_t>(divisor)) {
    out.push_back(triplets[i]);
  }
  return out;
}

std::vector<DecisionRecord> fixed_rate_decisions(
    std::span<const MeasurementTriplet> triplets, int divisor) {
  if (divisor < 1) throw InvalidInput(fmt::format("divisor must be >= 1, got {}", divisor));
  std::vector<DecisionRecord> out(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    out[i].t = triplets[i].t;
    out[i].kept = i % static_cast<std::size_t>(divisor) == 0;
    if (out[i].kept) out[i].binding = i == 0 ? BindingQuantity::kFirst : BindingQuantity::kNone;
  }
  return out;
}

}  // namespace adaptrr
