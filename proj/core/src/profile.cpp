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

#include "adaptrr/profile.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

#ifndef ADAPTRR_DEFAULT_PROFILE_DIR
#define ADAPTRR_DEFAULT_PROFILE_DIR "profiles"
#endif

namespace adaptrr {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  const std::string buf(cell);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (errno != 0 || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

Profile parse_profile(std::string_view text, const std::string& source_name) {
  std::vector<AnchorPoint> amp;
  std::vector<AnchorPoint> freq;
  std::string description;
  bool header_seen = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                   : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (description.empty()) description = std::string(trim(line.substr(1)));
      continue;
    }
    const auto cells = split(line, ',');
    if (!header_seen) {
      if (cells.size() != 3 || cells[0] != "quantity" || cells[1] != "t_s" ||
          cells[2] != "value") {
        throw ParseError(source_name, line_no,
                         "expected header 'quantity,t_s,value'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 3) {
      throw ParseError(source_name, line_no,
                       fmt::format("expected 3 cells, found {}", cells.size()));
    }
    std::vector<AnchorPoint>* series = nullptr;
    if (cells[0] == "amplitude_V") {
      series = &amp;
    } else if (cells[0] == "frequency_Hz") {
      series = &freq;
    } else {
      throw ParseError(source_name, line_no,
                       fmt::format("unknown quantity '{}'", cells[0]));
    }
    const auto t = to_double(cells[1]);
    const auto v = to_double(cells[2]);
    if (!t) throw ParseError(source_name, line_no, fmt::format("non-numeric time '{}'", cells[1]));
    if (!v) throw ParseError(source_name, line_no, fmt::format("non-numeric value '{}'", cells[2]));
    if (!series->empty() && !(*t > series->back().t)) {
      throw ParseError(source_name, line_no,
                       fmt::format("{} time {} does not follow previous time {}",
                                   cells[0], *t, series->back().t));
    }
    series->push_back({*t, *v});
  }

  if (!header_seen) throw ParseError(source_name, line_no, "missing header");
  if (amp.size() < 2) {
    throw ParseError(source_name, line_no,
                     "amplitude_V section needs at least 2 rows");
  }
  if (freq.size() < 2) {
    throw ParseError(source_name, line_no,
                     "frequency_Hz section needs at least 2 rows");
  }
  if (amp.front().t != freq.front().t || amp.back().t != freq.back().t) {
    throw ParseError(source_name, line_no,
                     fmt::format("amplitude spans [{}, {}] s but frequency spans [{}, {}] s",
                                 amp.front().t, amp.back().t, freq.front().t,
                                 freq.back().t));
  }
  for (const auto& p : amp) {
    if (p.value < 0.0) throw ParseError(source_name, line_no, "negative amplitude");
  }
  for (const auto& p : freq) {
    if (!(p.value > 0.0)) throw ParseError(source_name, line_no, "non-positive frequency");
  }
  return Profile{AnchorSeries(std::move(amp)), AnchorSeries(std::move(freq)),
                 std::move(description)};
}

Profile parse_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open profile");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str(), path.string());
}

std::filesystem::path bundled_profile_dir() {
  if (const char* env = std::getenv("ADAPTRR_PROFILE_DIR"); env && *env) return env;
  return ADAPTRR_DEFAULT_PROFILE_DIR;
}

std::vector<BundledProfile> list_profiles(const std::filesystem::path& dir) {
  std::vector<BundledProfile> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    std::string description;
    std::ifstream in(entry.path());
    for (std::string line; std::getline(in, line);) {
      const auto t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '#') description = std::string(trim(t.substr(1)));
      break;
    }
    out.push_back({entry.path().stem().string(), entry.path(), std::move(description)});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace adaptrr
