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

#include "adaptrr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "adaptrr/error.hpp"
#include "adaptrr/profile.hpp"

namespace adaptrr {

using ordered_json = nlohmann::ordered_json;

void ExperimentConfig::validate() const {
  estimator_config().validate();
  thresholds.validate();
  if (algorithms.empty()) throw InvalidInput("no algorithm configured");
  for (const auto& a : algorithms) {
    if (a.ipdft_iterations < 0) throw InvalidInput("ipdft_iterations must be >= 0");
  }
  for (int d : fixed_baselines) {
    if (d < 1) throw InvalidInput(fmt::format("fixed divisor must be >= 1, got {}", d));
  }
}

EstimatorConfig ExperimentConfig::estimator_config() const {
  return EstimatorConfig{f0, fs, rr_in};
}

ReportWindow report_window(const ExperimentConfig& config, const GroundTruth& gt) {
  const EstimatorConfig ecfg = config.estimator_config();
  std::int64_t lead = 0;
  std::int64_t lag = 0;
  for (const auto& spec : config.algorithms) {
    const auto est = make_estimator(spec, ecfg);
    lead = std::max(lead, est->lead());
    lag = std::max(lag, est->lag());
  }
  const std::int64_t step = ecfg.report_step();
  const std::int64_t lo = gt.first_sample() + lead;
  // Round up to a multiple of the report step.
  std::int64_t first = (lo >= 0 ? (lo + step - 1) / step : -((-lo) / step)) * step;
  const std::int64_t hi = gt.last_sample() - lag;
  if (hi < first) {
    throw InvalidInput(fmt::format(
        "profile domain [{}, {}] s is too short for the estimator windows "
        "({} samples before and {} after each report)",
        gt.domain_begin(), gt.domain_end(), lead, lag));
  }
  const std::int64_t count = (hi - first) / step + 1;
  return {first, first + (count - 1) * step, static_cast<std::size_t>(count)};
}

std::vector<MeasurementTriplet> reference_track(const GroundTruth& gt,
                                                std::int64_t first_sample,
                                                std::int64_t last_sample) {
  std::vector<MeasurementTriplet> out;
  if (last_sample < first_sample) return out;
  out.reserve(static_cast<std::size_t>(last_sample - first_sample + 1));
  for (std::int64_t n = first_sample; n <= last_sample; ++n) {
    out.push_back(eval_reference(gt, static_cast<double>(n) / gt.fs()));
  }
  return out;
}

TrackingIndices score(std::span<const MeasurementTriplet> kept,
                      std::span<const MeasurementTriplet> reference,
                      std::int64_t first_sample, double f0, double fs,
                      TreFormula formula) {
  Reconstructor view(kept, f0, fs);
  TrackingAccumulator acc;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double t = static_cast<double>(first_sample + static_cast<std::int64_t>(i)) / fs;
    acc.add(view.at(t), reference[i]);
  }
  return acc.result(formula);
}

GroundTruth load_ground_truth(const ExperimentConfig& config) {
  const Profile profile = parse_profile(config.profile_path);
  return GroundTruth::from_anchors(profile.amplitude, profile.frequency, config.f0,
                                   config.fs, config.phase0);
}

namespace {

std::string rate_label(double rr_in, int divisor) {
  return fmt::format("{:g}", rr_in / static_cast<double>(divisor));
}

ModeResult evaluate_mode(RateMode mode, int divisor, std::string label,
                         std::vector<DecisionRecord> decisions,
                         std::span<const MeasurementTriplet> stream,
                         std::span<const MeasurementTriplet> reference,
                         std::int64_t first_sample, const ExperimentConfig& cfg) {
  ModeResult r;
  r.mode = mode;
  r.divisor = divisor;
  r.label = std::move(label);
  r.kept = kept_triplets(stream, decisions);
  r.decisions = std::move(decisions);
  const ThroughputStats stats = throughput_stats(r.decisions);
  r.report.indices = score(r.kept, reference, first_sample, cfg.f0, cfg.fs, cfg.tre_formula);
  r.report.compression_ratio = stats.compression_ratio;
  r.report.kept_count = stats.kept_count;
  r.report.total_count = stats.total_count;
  r.report.instantaneous_rr = stats.instantaneous_rr;
  return r;
}

AlgorithmResult run_algorithm(const EstimatorSpec& spec, const ExperimentConfig& cfg,
                              const SampleBlock& block, const ReportWindow& win,
                              std::span<const MeasurementTriplet> reference) {
  AlgorithmResult out;
  out.spec = spec;
  const auto est = make_estimator(spec, cfg.estimator_config());
  out.stream = est->run(block, win.first, win.count);

  out.full = evaluate_mode(RateMode::kFull, 1, rate_label(cfg.rr_in, 1),
                           fixed_rate_decisions(out.stream, 1), out.stream, reference,
                           win.first, cfg);
  for (int d : cfg.fixed_baselines) {
    out.fixed.push_back(evaluate_mode(RateMode::kFixed, d, rate_label(cfg.rr_in, d),
                                      fixed_rate_decisions(out.stream, d), out.stream,
                                      reference, win.first, cfg));
  }
  out.adaptive = evaluate_mode(RateMode::kAdaptive, 1, "adaptive",
                               decimate(out.stream, cfg.thresholds, cfg.f0), out.stream,
                               reference, win.first, cfg);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const GroundTruth& gt) {
  config.validate();
  if (gt.fs() != config.fs || gt.f0() != config.f0) {
    throw InvalidInput("ground truth sampled with a different f0/fs than the config");
  }
  ExperimentResult result;
  result.config = config;
  const ReportWindow win = report_window(config, gt);
  result.first_report = win.first;
  result.last_report = win.last;

  const SampleBlock block = synth_three_phase(gt);
  const auto reference = reference_track(gt, win.first, win.last);

  // One job per algorithm; results are collected in configured order.
  std::vector<std::future<AlgorithmResult>> jobs;
  for (const auto& spec : config.algorithms) {
    jobs.push_back(std::async(std::launch::async, [&, spec] {
      return run_algorithm(spec, config, block, win, reference);
    }));
  }
  for (auto& j : jobs) result.algorithms.push_back(j.get());
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, load_ground_truth(config));
}

// --- emitters --------------------------------------------------------------

namespace {

struct IndexRow {
  const char* csv_name;
  const char* text_name;
  double TrackingIndices::*field;
};

constexpr std::array<IndexRow, 3> kIndexRows{{
    {"TrE_TVE_pct", "TrE_TVE [%]", &TrackingIndices::tve},
    {"TrE_FE_mHz", "TrE_FE [mHz]", &TrackingIndices::fe},
    {"TrE_RFE_Hz_per_s", "TrE_RFE [Hz/s]", &TrackingIndices::rfe},
}};

// Modes of one algorithm in table order: full rate, fixed baselines, adaptive.
std::vector<const ModeResult*> table_modes(const AlgorithmResult& a) {
  std::vector<const ModeResult*> out{&a.full};
  for (const auto& f : a.fixed) out.push_back(&f);
  out.push_back(&a.adaptive);
  return out;
}

std::string algo_name(const AlgorithmResult& a) { return std::string(to_string(a.spec.kind)); }

}  // namespace

std::string emit_table_csv(const ExperimentResult& result) {
  std::string out = "index,rr_mode,algorithm,value\n";
  if (result.algorithms.empty()) return out;
  const std::size_t n_modes = table_modes(result.algorithms.front()).size();
  for (const auto& row : kIndexRows) {
    for (std::size_t m = 0; m < n_modes; ++m) {
      for (const auto& a : result.algorithms) {
        const ModeResult* mode = table_modes(a)[m];
        out += fmt::format("{},{},{},{}\n", row.csv_name, mode->label, algo_name(a),
                           mode->report.indices.*row.field);
      }
    }
  }
  for (const auto& a : result.algorithms) {
    out += fmt::format("compression_ratio,-,{},{}\n", algo_name(a),
                       a.adaptive.report.compression_ratio);
  }
  return out;
}

std::string emit_table_text(const ExperimentResult& result) {
  std::string out;
  out += fmt::format("{:<20}{:>10}", "Index", "RR [fps]");
  for (const auto& a : result.algorithms) out += fmt::format("{:>14}", algo_name(a));
  out += "\n";
  if (result.algorithms.empty()) return out;
  const std::size_t n_modes = table_modes(result.algorithms.front()).size();
  for (const auto& row : kIndexRows) {
    for (std::size_t m = 0; m < n_modes; ++m) {
      const std::string& label = table_modes(result.algorithms.front())[m]->label;
      out += fmt::format("{:<20}{:>10}", m == 0 ? row.text_name : "", label);
      for (const auto& a : result.algorithms) {
        out += fmt::format("{:>14.3g}", table_modes(a)[m]->report.indices.*row.field);
      }
      out += "\n";
    }
  }
  out += fmt::format("{:<20}{:>10}", "Compression Ratio", "-");
  for (const auto& a : result.algorithms) {
    out += fmt::format("{:>14.3f}", a.adaptive.report.compression_ratio);
  }
  out += "\n";
  return out;
}

std::string emit_summary_json(const ExperimentResult& result) {
  const auto& cfg = result.config;
  ordered_json j;
  j["profile"] = cfg.profile_path.generic_string();
  j["f0_Hz"] = cfg.f0;
  j["fs_Hz"] = cfg.fs;
  j["rr_in_fps"] = cfg.rr_in;
  j["phase0_rad"] = cfg.phase0;
  j["thresholds"] = {{"delta_tve", cfg.thresholds.delta_tve},
                     {"delta_fe_Hz", cfg.thresholds.delta_fe},
                     {"delta_rfe_Hz_per_s", cfg.thresholds.delta_rfe}};
  j["tre_formula"] = std::string(to_string(cfg.tre_formula));
  j["fixed_divisors"] = cfg.fixed_baselines;
  j["first_report_s"] = static_cast<double>(result.first_report) / cfg.fs;
  j["last_report_s"] = static_cast<double>(result.last_report) / cfg.fs;

  ordered_json algos = ordered_json::array();
  for (const auto& a : result.algorithms) {
    ordered_json ja;
    ja["algorithm"] = algo_name(a);
    if (a.spec.kind == EstimatorKind::kIIpDft) ja["ipdft_iterations"] = a.spec.ipdft_iterations;
    ordered_json modes = ordered_json::array();
    for (const ModeResult* m : table_modes(a)) {
      modes.push_back({{"rr_mode", m->label},
                       {"tre_tve_pct", m->report.indices.tve},
                       {"tre_fe_mHz", m->report.indices.fe},
                       {"tre_rfe_Hz_per_s", m->report.indices.rfe},
                       {"compression_ratio", m->report.compression_ratio},
                       {"kept_count", m->report.kept_count},
                       {"total_count", m->report.total_count}});
    }
    ja["modes"] = std::move(modes);
    algos.push_back(std::move(ja));
  }
  j["algorithms"] = std::move(algos);
  return j.dump(2) + "\n";
}

namespace {

ordered_json triplet_json(const MeasurementTriplet& m) {
  return {{"t", m.t},
          {"re", m.phasor.real()},
          {"im", m.phasor.imag()},
          {"f", m.frequency},
          {"rocof", m.rocof}};
}

}  // namespace

std::string emit_kept_jsonl(const ModeResult& mode, std::span<const MeasurementTriplet> stream) {
  std::string out;
  for (std::size_t i = 0; i < mode.decisions.size(); ++i) {
    const auto& d = mode.decisions[i];
    if (!d.kept) continue;
    auto j = triplet_json(stream[i]);
    j["binding"] = std::string(to_string(d.binding));
    out += j.dump() + "\n";
  }
  return out;
}

std::string emit_decisions_jsonl(const ModeResult& mode,
                                 std::span<const MeasurementTriplet> stream) {
  std::string out;
  for (std::size_t i = 0; i < mode.decisions.size(); ++i) {
    const auto& d = mode.decisions[i];
    auto j = triplet_json(stream[i]);
    j["binding"] = std::string(to_string(d.binding));
    j["kept"] = d.kept;
    j["eps"] = {d.epsilon[0], d.epsilon[1], d.epsilon[2]};
    out += j.dump() + "\n";
  }
  return out;
}

std::string emit_instantaneous_rr_csv(const ModeResult& mode) {
  std::string out = "t_s,rr_fps\n";
  for (const auto& p : mode.report.instantaneous_rr) out += fmt::format("{},{}\n", p.t, p.rr);
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot write {}", path.string()));
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string mode_tag(const ModeResult& m) {
  switch (m.mode) {
    case RateMode::kFull:
      return "full";
    case RateMode::kFixed:
      return fmt::format("fixed{}", m.divisor);
    case RateMode::kAdaptive:
      return "adaptive";
  }
  return "mode";
}

void write_trace(const std::filesystem::path& path, const ModeResult& mode,
                 std::span<const MeasurementTriplet> reference, std::int64_t first_sample,
                 const ExperimentConfig& cfg) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot write {}", path.string()));
  std::unordered_set<std::int64_t> kept_idx;
  for (const auto& k : mode.kept) kept_idx.insert(std::llround(k.t * cfg.fs));

  f << "t_s,ref_mag,ref_angle,ref_f,ref_rocof,rec_mag,rec_angle,rec_f,rec_rocof,kept\n";
  Reconstructor view(mode.kept, cfg.f0, cfg.fs);
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const std::int64_t n = first_sample + static_cast<std::int64_t>(i);
    const double t = static_cast<double>(n) / cfg.fs;
    const auto rec = view.at(t);
    const auto& ref = reference[i];
    f << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", t, std::abs(ref.phasor),
                     std::arg(ref.phasor), ref.frequency, ref.rocof, std::abs(rec.phasor),
                     std::arg(rec.phasor), rec.frequency, rec.rocof,
                     kept_idx.count(n) ? 1 : 0);
  }
}

}  // namespace

void write_artifacts(const ExperimentResult& result, const GroundTruth& gt) {
  const auto& cfg = result.config;
  const auto& dir = cfg.output_dir;
  if (dir.empty()) throw InvalidInput("no output directory configured");
  std::filesystem::create_directories(dir);

  write_file(dir / "table.csv", emit_table_csv(result));
  write_file(dir / "table.txt", emit_table_text(result));
  write_file(dir / "summary.json", emit_summary_json(result));

  std::vector<MeasurementTriplet> reference;
  if (cfg.emit_traces) reference = reference_track(gt, result.first_report, result.last_report);

  for (const auto& a : result.algorithms) {
    const std::string name = algo_name(a);
    std::vector<const ModeResult*> modes{&a.adaptive};
    for (const auto& f : a.fixed) modes.push_back(&f);
    for (const ModeResult* m : modes) {
      const std::string stem = fmt::format("{}_{}", name, mode_tag(*m));
      write_file(dir / fmt::format("kept_{}.jsonl", stem), emit_kept_jsonl(*m, a.stream));
      if (cfg.emit_decisions) {
        write_file(dir / fmt::format("decisions_{}.jsonl", stem),
                   emit_decisions_jsonl(*m, a.stream));
      }
      if (cfg.emit_traces) {
        write_trace(dir / fmt::format("trace_{}.csv", stem), *m, reference,
                    result.first_report, cfg);
      }
    }
    write_file(dir / fmt::format("instantaneous_rr_{}_adaptive.csv", name),
               emit_instantaneous_rr_csv(a.adaptive));
  }
}

}  // namespace adaptrr
