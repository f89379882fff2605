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

#ifndef ADAPTRR_PIECEWISE_POLY_HPP
#define ADAPTRR_PIECEWISE_POLY_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace adaptrr {

// Piecewise polynomial of degree <= 4 over [breakpoints.front(), breakpoints.back()].
//
// Piece i covers [breakpoints[i], breakpoints[i+1]] and stores its
// coefficients in the local variable s = t - breakpoints[i], lowest order
// first. Evaluation locates the piece by binary search and runs Horner.
// At an interior breakpoint the right-hand piece is used.
class PiecewisePoly {
 public:
  static constexpr std::size_t kMaxDegree = 4;
  using Coeffs = std::array<double, kMaxDegree + 1>;

  PiecewisePoly() = default;

  // Throws InvalidInput unless breakpoints are strictly increasing,
  // pieces.size() == breakpoints.size() - 1 and everything is finite.
  PiecewisePoly(std::vector<double> breakpoints, std::vector<Coeffs> pieces);

  // Single constant piece over [t0, t1].
  static PiecewisePoly constant(double t0, double t1, double value);

  // Throws RangeError outside the domain (a 1 ns slack absorbs grid rounding).
  double operator()(double t) const;

  // k-th derivative at t, k <= kMaxDegree. Same domain rules as operator().
  double derivative_at(double t, unsigned k) const;

  PiecewisePoly derivative() const;

  // Antiderivative anchored so that F(domain_begin()) = value_at_begin and
  // continuous across breakpoints. Throws InvalidInput when the result
  // would exceed kMaxDegree.
  PiecewisePoly antiderivative(double value_at_begin = 0.0) const;

  PiecewisePoly scaled(double factor) const;
  PiecewisePoly offset(double delta) const;

  double domain_begin() const { return breaks_.front(); }
  double domain_end() const { return breaks_.back(); }
  bool contains(double t) const;

  // Highest degree with a nonzero coefficient over all pieces.
  std::size_t degree() const;
  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const double> breakpoints() const { return breaks_; }
  std::span<const Coeffs> pieces() const { return pieces_; }

 private:
  std::size_t locate(double t) const;

  std::vector<double> breaks_;
  std::vector<Coeffs> pieces_;
};

}  // namespace adaptrr

#endif  // ADAPTRR_PIECEWISE_POLY_HPP
