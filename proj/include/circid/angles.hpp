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

#include <complex>
#include <cstdint>
#include <numbers>

namespace circid {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 2π split as hi + lo; hi is the nearest double.
inline constexpr double kTwoPiHi = 6.283185307179586;
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;

/// Reduces an angle to [0, 2π).
double reduce_angle(double theta);

/// Reduces an angle to [-π, π).
double reduce_angle_signed(double theta);

/// Distance on the unit circle, min(|Δ|, 2π - |Δ|), in [0, π].
double circle_distance(double a, double b);

/// Returns p·θ reduced to [-π, π], keeping the rounding error of the
/// product. Valid for |p·θ| up to ~1e15.
double product_angle(std::int64_t p, double theta);

/// A complex number stored as exp(log_scale) * factor, so that moments of
/// very high order stay representable.
struct LogComplex {
  double log_scale = 0.0;
  std::complex<double> factor{1.0, 0.0};

  bool is_zero() const noexcept { return factor == std::complex<double>{}; }
  double log_abs() const;
  double arg() const { return std::arg(factor); }
  std::complex<double> value() const;
};

}  // namespace circid
