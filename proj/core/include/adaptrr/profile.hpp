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

#ifndef ADAPTRR_PROFILE_HPP
#define ADAPTRR_PROFILE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adaptrr/waveform.hpp"

namespace adaptrr {

// Event anchor data read from a profile CSV:
//
//   # comment
//   quantity,t_s,value
//   amplitude_V,0.0,230.0
//   frequency_Hz,0.0,50.0
//
// Rows of the two quantities may be interleaved; within a quantity times
// must strictly increase. Both quantities must start and end at the same
// instants.
struct Profile {
  AnchorSeries amplitude;
  AnchorSeries frequency;
  std::string description;  // first comment line, '#' stripped
};

// Throws ParseError naming the source and the 1-based line.
Profile parse_profile(std::string_view text, const std::string& source_name);
Profile parse_profile(const std::filesystem::path& path);

struct BundledProfile {
  std::string name;  // file stem
  std::filesystem::path path;
  std::string description;
};

// Directory holding the bundled profiles: $ADAPTRR_PROFILE_DIR when set,
// otherwise the location recorded at build time.
std::filesystem::path bundled_profile_dir();
std::vector<BundledProfile> list_profiles(const std::filesystem::path& dir);

}  // namespace adaptrr

#endif  // ADAPTRR_PROFILE_HPP
