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

#include "adaptrr/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "adaptrr/error.hpp"

namespace adaptrr {

namespace {

constexpr double kDomainSlack = 1e-9;

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints,
                             std::vector<Coeffs> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2) {
    throw InvalidInput("piecewise polynomial needs at least two breakpoints");
  }
  if (pieces_.size() + 1 != breaks_.size()) {
    throw InvalidInput(fmt::format(
        "piecewise polynomial has {} breakpoints but {} pieces",
        breaks_.size(), pieces_.size()));
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!std::isfinite(breaks_[i])) {
      throw InvalidInput("non-finite breakpoint");
    }
    if (i > 0 && !(breaks_[i] > breaks_[i - 1])) {
      throw InvalidInput(
          fmt::format("breakpoints not strictly increasing at index {}", i));
    }
  }
  for (const auto& c : pieces_) {
    for (double v : c) {
      if (!std::isfinite(v)) throw InvalidInput("non-finite coefficient");
    }
  }
}

PiecewisePoly PiecewisePoly::constant(double t0, double t1, double value) {
  Coeffs c{};
  c[0] = value;
  return PiecewisePoly({t0, t1}, {c});
}

bool PiecewisePoly::contains(double t) const {
  return !breaks_.empty() && t >= breaks_.front() - kDomainSlack &&
         t <= breaks_.back() + kDomainSlack;
}

std::size_t PiecewisePoly::locate(double t) const {
  if (!contains(t)) {
    throw RangeError(fmt::format("t = {} outside [{}, {}]", t,
                                 breaks_.empty() ? 0.0 : breaks_.front(),
                                 breaks_.empty() ? 0.0 : breaks_.back()));
  }
  // First breakpoint strictly greater than t, minus one.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  auto idx = static_cast<std::ptrdiff_t>(it - breaks_.begin()) - 1;
  idx = std::clamp<std::ptrdiff_t>(
      idx, 0, static_cast<std::ptrdiff_t>(pieces_.size()) - 1);
  return static_cast<std::size_t>(idx);
}

double PiecewisePoly::operator()(double t) const {
  const std::size_t i = locate(t);
  const double s = t - breaks_[i];
  const Coeffs& c = pieces_[i];
  double acc = c[kMaxDegree];
  for (std::size_t k = kMaxDegree; k-- > 0;) acc = acc * s + c[k];
  return acc;
}

double PiecewisePoly::derivative_at(double t, unsigned k) const {
  const std::size_t i = locate(t);
  if (k > kMaxDegree) return 0.0;
  const double s = t - breaks_[i];
  const Coeffs& c = pieces_[i];
  // d^k/ds^k of sum c_j s^j = sum_{j>=k} c_j j!/(j-k)! s^(j-k)
  double acc = 0.0;
  for (std::size_t j = kMaxDegree + 1; j-- > k;) {
    double falling = 1.0;
    for (std::size_t m = 0; m < k; ++m) falling *= static_cast<double>(j - m);
    acc = acc * s + c[j] * falling;
  }
  return acc;
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Coeffs> out(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t k = 1; k <= kMaxDegree; ++k) {
      out[i][k - 1] = pieces_[i][k] * static_cast<double>(k);
    }
    out[i][kMaxDegree] = 0.0;
  }
  return PiecewisePoly(breaks_, std::move(out));
}

PiecewisePoly PiecewisePoly::antiderivative(double value_at_begin) const {
  if (degree() >= kMaxDegree) {
    throw InvalidInput("antiderivative would exceed the maximum piece degree");
  }
  std::vector<Coeffs> out(pieces_.size());
  double carry = value_at_begin;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Coeffs& o = out[i];
    o[0] = carry;
    for (std::size_t k = 0; k < kMaxDegree; ++k) {
      o[k + 1] = pieces_[i][k] / static_cast<double>(k + 1);
    }
    const double h = breaks_[i + 1] - breaks_[i];
    double acc = o[kMaxDegree];
    for (std::size_t k = kMaxDegree; k-- > 0;) acc = acc * h + o[k];
    carry = acc;
  }
  return PiecewisePoly(breaks_, std::move(out));
}

PiecewisePoly PiecewisePoly::scaled(double factor) const {
  auto out = pieces_;
  for (auto& c : out) {
    for (double& v : c) v *= factor;
  }
  return PiecewisePoly(breaks_, std::move(out));
}

PiecewisePoly PiecewisePoly::offset(double delta) const {
  auto out = pieces_;
  for (auto& c : out) c[0] += delta;
  return PiecewisePoly(breaks_, std::move(out));
}

std::size_t PiecewisePoly::degree() const {
  std::size_t deg = 0;
  for (const auto& c : pieces_) {
    for (std::size_t k = kMaxDegree; k > deg; --k) {
      if (c[k] != 0.0) {
        deg = k;
        break;
      }
    }
  }
  return deg;
}

}  // namespace adaptrr
