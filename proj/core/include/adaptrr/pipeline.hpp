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

#ifndef ADAPTRR_PIPELINE_HPP
#define ADAPTRR_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adaptrr/decimator.hpp"
#include "adaptrr/estimators.hpp"
#include "adaptrr/metrics.hpp"
#include "adaptrr/waveform.hpp"

namespace adaptrr {

struct ExperimentConfig {
  std::filesystem::path profile_path;
  double f0 = 50.0;
  double fs = 10000.0;
  double rr_in = 100.0;
  double phase0 = 0.0;
  std::vector<EstimatorSpec> algorithms{{EstimatorKind::kPIec, 3},
                                        {EstimatorKind::kIIpDft, 3}};
  Thresholds thresholds;
  std::vector<int> fixed_baselines;  // divisors of the internal-rate stream
  TreFormula tre_formula = TreFormula::kRms;
  std::filesystem::path output_dir;
  bool emit_decisions = false;
  bool emit_traces = false;

  // Throws InvalidInput on violated invariants (fs/f0 and fs/rr_in integer,
  // positive thresholds, divisors >= 1, at least one algorithm).
  void validate() const;
  EstimatorConfig estimator_config() const;
};

// Flat INI-style text: [section] headers, key = value lines, '#' or ';'
// comments. Sections: [experiment] (profile, f0, fs, rr_in, phase0, algo,
// ipdft_iterations, fixed, tre_formula, out, emit_decisions, emit_traces)
// and [thresholds] (delta_tve, delta_fe, delta_rfe). A relative profile or
// output path resolves against the config file's directory. Throws
// ParseError with file and line.
ExperimentConfig parse_config(std::string_view text, const std::string& source_name,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

enum class RateMode { kFull, kFixed, kAdaptive };

struct ModeResult {
  RateMode mode = RateMode::kFull;
  int divisor = 1;        // kFixed only
  std::string label;      // "100", "50", ..., "adaptive"
  TrackingReport report;
  std::vector<DecisionRecord> decisions;
  std::vector<MeasurementTriplet> kept;
};

struct AlgorithmResult {
  EstimatorSpec spec;
  std::vector<MeasurementTriplet> stream;  // internal-rate triplets
  ModeResult full;
  std::vector<ModeResult> fixed;
  ModeResult adaptive;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::int64_t first_report = 0;  // sample index
  std::int64_t last_report = 0;
  std::vector<AlgorithmResult> algorithms;  // in configured order
};

// Internal-rate reporting window shared by all configured algorithms: the
// first report sits where every estimator has a full window, on a multiple
// of the report step.
struct ReportWindow {
  std::int64_t first;
  std::int64_t last;
  std::size_t count;
};
ReportWindow report_window(const ExperimentConfig& config, const GroundTruth& gt);

// Scores kept triplets on the sample grid [first_sample, last_sample] against
// reference values precomputed on that grid.
TrackingIndices score(std::span<const MeasurementTriplet> kept,
                      std::span<const MeasurementTriplet> reference,
                      std::int64_t first_sample, double f0, double fs,
                      TreFormula formula);

// Reference values from gt on the sample grid [first_sample, last_sample].
std::vector<MeasurementTriplet> reference_track(const GroundTruth& gt,
                                                std::int64_t first_sample,
                                                std::int64_t last_sample);

GroundTruth load_ground_truth(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config, const GroundTruth& gt);
// Parses config.profile_path first.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Long-format comparison table: index,rr_mode,algorithm,value.
std::string emit_table_csv(const ExperimentResult& result);
// Wide table, one value column per algorithm.
std::string emit_table_text(const ExperimentResult& result);
std::string emit_summary_json(const ExperimentResult& result);

// JSON-lines, one object per kept triplet.
std::string emit_kept_jsonl(const ModeResult& mode, std::span<const MeasurementTriplet> stream);
// JSON-lines, one object per incoming triplet, with kept flag and eps.
std::string emit_decisions_jsonl(const ModeResult& mode,
                                 std::span<const MeasurementTriplet> stream);
std::string emit_instantaneous_rr_csv(const ModeResult& mode);

// Writes every artifact of a run under config.output_dir.
void write_artifacts(const ExperimentResult& result, const GroundTruth& gt);

}  // namespace adaptrr

#endif  // ADAPTRR_PIPELINE_HPP
