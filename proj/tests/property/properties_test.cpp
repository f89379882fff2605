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

#include <gtest/gtest.h>

#include "property_suites.hpp"

namespace adaptrr::testing {
namespace {

constexpr std::uint64_t kSeed = 20240611;

void expect_clean(const SuiteResult& r) {
  EXPECT_GT(r.checks(), 0u);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(WaveformProperties, Hold) { expect_clean(waveform_properties(kSeed)); }
TEST(EstimatorProperties, Hold) { expect_clean(estimator_properties(kSeed)); }
TEST(DecimatorProperties, Hold) { expect_clean(decimator_properties(kSeed)); }
TEST(MetricsProperties, Hold) { expect_clean(metrics_properties(kSeed)); }
TEST(PipelineProperties, Hold) { expect_clean(pipeline_properties(kSeed)); }

}  // namespace
}  // namespace adaptrr::testing
