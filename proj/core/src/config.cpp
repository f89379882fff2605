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

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "adaptrr/error.hpp"
#include "adaptrr/pipeline.hpp"

namespace adaptrr {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

class LineReader {
 public:
  LineReader(const std::string& source, std::size_t line) : source_(source), line_(line) {}

  double number(std::string_view key, std::string_view v) const {
    const std::string buf = unquote(v);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(buf.c_str(), &end);
    if (buf.empty() || errno != 0 || end != buf.c_str() + buf.size() || !std::isfinite(d)) {
      fail(fmt::format("{}: expected a number, got '{}'", key, v));
    }
    return d;
  }

  int integer(std::string_view key, std::string_view v) const {
    const double d = number(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) {
      fail(fmt::format("{}: expected an integer, got '{}'", key, v));
    }
    return static_cast<int>(d);
  }

  bool boolean(std::string_view key, std::string_view v) const {
    const std::string s = unquote(v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(fmt::format("{}: expected true/false, got '{}'", key, v));
  }

  std::vector<std::string> list(std::string_view v) const {
    std::vector<std::string> out;
    const std::string s = unquote(v);
    std::string_view rest = s;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      if (!item.empty()) out.push_back(unquote(item));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_, what);
  }

 private:
  const std::string& source_;
  std::size_t line_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source_name,
                              const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::string section;
  int iterations = 3;
  std::vector<EstimatorKind> kinds;
  bool kinds_set = false;

  const auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineReader r(source_name, line_no);

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') r.fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "thresholds") {
        r.fail(fmt::format("unknown section [{}]", section));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) r.fail("expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) r.fail(fmt::format("key '{}' outside any section", key));

    if (section == "thresholds") {
      if (key == "delta_tve") {
        cfg.thresholds.delta_tve = r.number(key, value);
      } else if (key == "delta_fe") {
        cfg.thresholds.delta_fe = r.number(key, value);
      } else if (key == "delta_rfe") {
        cfg.thresholds.delta_rfe = r.number(key, value);
      } else {
        r.fail(fmt::format("unknown key '{}' in [thresholds]", key));
      }
      continue;
    }

    if (key == "profile") {
      cfg.profile_path = resolve(unquote(value));
    } else if (key == "f0") {
      cfg.f0 = r.number(key, value);
    } else if (key == "fs") {
      cfg.fs = r.number(key, value);
    } else if (key == "rr_in") {
      cfg.rr_in = r.number(key, value);
    } else if (key == "phase0") {
      cfg.phase0 = r.number(key, value);
    } else if (key == "algo") {
      kinds.clear();
      kinds_set = true;
      for (const auto& name : r.list(value)) {
        try {
          kinds.push_back(parse_estimator_kind(name));
        } catch (const InvalidInput& e) {
          r.fail(e.what());
        }
      }
    } else if (key == "ipdft_iterations") {
      iterations = r.integer(key, value);
    } else if (key == "fixed") {
      cfg.fixed_baselines.clear();
      for (const auto& d : r.list(value)) cfg.fixed_baselines.push_back(r.integer(key, d));
    } else if (key == "tre_formula") {
      try {
        cfg.tre_formula = parse_tre_formula(unquote(value));
      } catch (const InvalidInput& e) {
        r.fail(e.what());
      }
    } else if (key == "out") {
      cfg.output_dir = resolve(unquote(value));
    } else if (key == "emit_decisions") {
      cfg.emit_decisions = r.boolean(key, value);
    } else if (key == "emit_traces") {
      cfg.emit_traces = r.boolean(key, value);
    } else {
      r.fail(fmt::format("unknown key '{}' in [experiment]", key));
    }
  }

  if (kinds_set) {
    cfg.algorithms.clear();
    for (auto k : kinds) cfg.algorithms.push_back({k, iterations});
  } else {
    for (auto& a : cfg.algorithms) a.ipdft_iterations = iterations;
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string(), path.parent_path());
}

}  // namespace adaptrr
