/*
   Copyright 2026 The circid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "circid/circular.hpp"

namespace circid {

/// Deterministic uniform stream on the open interval (0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53 random bits, offset by half a step to exclude 0 and 1
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Exact sampler for one circular model. SSWC and SSvM draw from the
/// symmetric base and reflect about mu with probability
/// (1 - lambda sin(θ0 - mu)) / 2; the von Mises base uses rejection from a
/// wrapped Cauchy envelope. MC inverts a tabulated CDF.
class CircularSampler {
 public:
  explicit CircularSampler(const CircularModel& model);

  /// Angle in [0, 2π).
  double draw(Rng& rng) const;

 private:
  double draw_base_offset(Rng& rng) const;
  double draw_tabulated(Rng& rng) const;

  CircularModel model_;
  // wrapped Cauchy concentration of the base or of the von Mises envelope
  double envelope_rho_ = 0.0;
  double log_accept_max_ = 0.0;
  // MC inversion table
  std::vector<double> nodes_;
  std::vector<double> node_density_;
  std::vector<double> cumulative_;
};

}  // namespace circid
