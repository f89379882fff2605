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

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "adaptrr/error.hpp"
#include "adaptrr/pipeline.hpp"
#include "adaptrr/profile.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunOptions {
  std::string config;
  std::optional<std::string> profile;
  std::optional<std::string> out;
  std::vector<std::string> algo;
  std::optional<int> ipdft_iterations;
  std::optional<double> f0, fs, rr_in, phase0;
  std::optional<double> delta_tve, delta_fe, delta_rfe;
  std::vector<int> fixed;
  bool fixed_set = false;
  std::optional<std::string> tre_formula;
  bool emit_decisions = false;
  bool emit_traces = false;
  bool quiet = false;
};

adaptrr::ExperimentConfig build_config(const RunOptions& o) {
  using namespace adaptrr;
  ExperimentConfig cfg = load_config(o.config);
  if (o.profile) cfg.profile_path = *o.profile;
  if (o.out) cfg.output_dir = *o.out;
  if (o.f0) cfg.f0 = *o.f0;
  if (o.fs) cfg.fs = *o.fs;
  if (o.rr_in) cfg.rr_in = *o.rr_in;
  if (o.phase0) cfg.phase0 = *o.phase0;
  if (o.delta_tve) cfg.thresholds.delta_tve = *o.delta_tve;
  if (o.delta_fe) cfg.thresholds.delta_fe = *o.delta_fe;
  if (o.delta_rfe) cfg.thresholds.delta_rfe = *o.delta_rfe;
  if (o.fixed_set) cfg.fixed_baselines = o.fixed;
  if (o.tre_formula) cfg.tre_formula = parse_tre_formula(*o.tre_formula);
  if (!o.algo.empty()) {
    const int iters = cfg.algorithms.empty() ? 3 : cfg.algorithms.front().ipdft_iterations;
    cfg.algorithms.clear();
    for (const auto& a : o.algo) cfg.algorithms.push_back({parse_estimator_kind(a), iters});
  }
  if (o.ipdft_iterations) {
    for (auto& a : cfg.algorithms) a.ipdft_iterations = *o.ipdft_iterations;
  }
  cfg.emit_decisions = cfg.emit_decisions || o.emit_decisions;
  cfg.emit_traces = cfg.emit_traces || o.emit_traces;
  return cfg;
}

int cmd_run(const RunOptions& o) {
  adaptrr::ExperimentConfig cfg = build_config(o);
  cfg.validate();
  if (cfg.output_dir.empty()) throw adaptrr::InvalidInput("no output directory (set out or --out)");
  const auto gt = adaptrr::load_ground_truth(cfg);
  const auto result = adaptrr::run_experiment(cfg, gt);
  adaptrr::write_artifacts(result, gt);
  if (!o.quiet) std::fputs(adaptrr::emit_table_text(result).c_str(), stdout);
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  const auto profile = adaptrr::parse_profile(std::filesystem::path(path));
  const auto& a = profile.amplitude.points();
  const auto& f = profile.frequency.points();
  fmt::print("{}: ok, {} amplitude and {} frequency anchors over [{}, {}] s\n", path,
             a.size(), f.size(), a.front().t, a.back().t);
  return kExitOk;
}

int cmd_list_profiles() {
  const auto dir = adaptrr::bundled_profile_dir();
  for (const auto& p : adaptrr::list_profiles(dir)) {
    fmt::print("{:<20} {}\n", p.name, p.description);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive reporting-rate experiments for synchrophasor streams"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write its artifacts");
  run_cmd->add_option("--config", run.config, "Experiment config file")->required();
  run_cmd->add_option("--profile", run.profile, "Override the profile CSV");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--algo", run.algo, "Estimators: p_iec, i_ipdft")->delimiter(',');
  run_cmd->add_option("--ipdft-iterations", run.ipdft_iterations);
  run_cmd->add_option("--f0", run.f0, "Rated frequency [Hz]");
  run_cmd->add_option("--fs", run.fs, "Sample rate [Hz]");
  run_cmd->add_option("--rr-in", run.rr_in, "Internal reporting rate [fps]");
  run_cmd->add_option("--phase0", run.phase0, "Initial phase [rad]");
  run_cmd->add_option("--delta-tve", run.delta_tve, "Phasor threshold (relative)");
  run_cmd->add_option("--delta-fe", run.delta_fe, "Frequency threshold [Hz]");
  run_cmd->add_option("--delta-rfe", run.delta_rfe, "ROCOF threshold [Hz/s]");
  auto* fixed_opt =
      run_cmd->add_option("--fixed", run.fixed, "Fixed-rate divisors, e.g. 2,10,20")
          ->delimiter(',');
  run_cmd->add_option("--tre-formula", run.tre_formula, "rms or printed");
  run_cmd->add_flag("--emit-decisions", run.emit_decisions, "Write per-frame decision logs");
  run_cmd->add_flag("--emit-traces", run.emit_traces, "Write reconstruction trace CSVs");
  run_cmd->add_flag("-q,--quiet", run.quiet, "Do not print the table");

  std::string profile_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a profile CSV");
  validate_cmd->add_option("--profile", profile_path, "Profile CSV")->required();

  auto* list_cmd = app.add_subcommand("list-profiles", "List bundled profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  run.fixed_set = fixed_opt->count() > 0;

  try {
    if (*run_cmd) return cmd_run(run);
    if (*validate_cmd) return cmd_validate(profile_path);
    if (*list_cmd) return cmd_list_profiles();
  } catch (const adaptrr::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const adaptrr::InvalidInput& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const adaptrr::DegenerateSignal& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return kExitNumerical;
  } catch (const adaptrr::UndefinedMetric& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return kExitNumerical;
  } catch (const adaptrr::RangeError& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return kExitOk;
}
