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

#ifndef ADAPTRR_TESTS_ORACLES_HPP
#define ADAPTRR_TESTS_ORACLES_HPP

// Independent reference computations. None of these call into the library
// code they are used to check.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "adaptrr/decimator.hpp"
#include "adaptrr/triplet.hpp"

namespace adaptrr::testing {

// Composite Simpson rule with n (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Symmetrical components by explicit 3x3 matrix product: {zero, positive,
// negative}.
std::array<Complex, 3> symmetrical_components(const std::array<Complex, 3>& abc);

// Receiver-side prediction written out in polar form.
MeasurementTriplet predict_polar(const MeasurementTriplet& last, double t, double f0);

// Reconstruction at t from scratch: binary search for the governing kept
// triplet, then predict_polar.
MeasurementTriplet reconstruct_at(std::span<const MeasurementTriplet> kept, double t,
                                  double f0, double fs);

// Kept flags from a direct whole-sequence evaluation of the keep rule.
std::vector<bool> offline_keep_flags(std::span<const MeasurementTriplet> stream,
                                     const Thresholds& thresholds, double f0);

// Root mean square of a sequence.
double rms(std::span<const double> v);

// |a - b| / max(|a|, |b|, floor).
double rel_diff(double a, double b, double floor = 1.0);
double rel_diff(Complex a, Complex b, double floor = 1.0);

}  // namespace adaptrr::testing

#endif  // ADAPTRR_TESTS_ORACLES_HPP
