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

#include <benchmark/benchmark.h>

#include "adaptrr/estimators.hpp"
#include "adaptrr/waveform.hpp"

namespace adaptrr {
namespace {

GroundTruth one_second() {
  return GroundTruth::from_anchors(AnchorSeries({{0, 230}, {0.5, 226}, {1.2, 231}}),
                                   AnchorSeries({{0, 50.0}, {0.5, 49.9}, {1.2, 50.05}}),
                                   50.0, 1e4, 0.4);
}

void BM_Synthesis(benchmark::State& state) {
  const auto gt = one_second();
  for (auto _ : state) benchmark::DoNotOptimize(synth_three_phase(gt));
  state.SetItemsProcessed(state.iterations() * 12001);
}
BENCHMARK(BM_Synthesis)->Unit(benchmark::kMillisecond);

// One second of internal-rate reports.
void BM_Estimator(benchmark::State& state) {
  const EstimatorSpec spec{static_cast<EstimatorKind>(state.range(0)), 3};
  const auto block = synth_three_phase(one_second());
  const auto est = make_estimator(spec, EstimatorConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(est->run(block, 1000, 100));
  state.SetItemsProcessed(state.iterations() * 100);
  state.SetLabel(std::string(est->name()));
}
BENCHMARK(BM_Estimator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace adaptrr
