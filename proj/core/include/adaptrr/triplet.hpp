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

#ifndef ADAPTRR_TRIPLET_HPP
#define ADAPTRR_TRIPLET_HPP

#include <complex>

namespace adaptrr {

using Complex = std::complex<double>;

// One PMU report: positive-sequence synchrophasor (rms volts, nominal
// rotating frame), frequency in Hz and ROCOF in Hz/s at time t (seconds).
// Reference values from a ground truth use the same shape.
struct MeasurementTriplet {
  double t = 0.0;
  Complex phasor{};
  double frequency = 0.0;
  double rocof = 0.0;

  friend bool operator==(const MeasurementTriplet&,
                         const MeasurementTriplet&) = default;
};

}  // namespace adaptrr

#endif  // ADAPTRR_TRIPLET_HPP
