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

#ifndef ADAPTRR_ERROR_HPP
#define ADAPTRR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adaptrr {

// Precondition violated by the caller (bad sizes, bad parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation requested outside the domain of a signal or series.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The input carries no usable fundamental (e.g. all-zero window).
class DegenerateSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric was requested against a zero reference.
class UndefinedMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Triplets presented to the decimator out of time order.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed profile or config file. Carries the offending file and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace adaptrr

#endif  // ADAPTRR_ERROR_HPP
