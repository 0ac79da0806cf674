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

#include "circid/angles.hpp"

#include <cmath>
#include <limits>

namespace circid {

namespace {

// x - k·2π with the low-order part of 2π folded in.
double subtract_turns(double x, double k) {
  return std::fma(-k, kTwoPiHi, x) - k * kTwoPiLo;
}

}  // namespace

double reduce_angle(double theta) {
  double k = std::floor(theta / kTwoPiHi);
  double r = subtract_turns(theta, k);
  if (r < 0.0) r += kTwoPiHi;
  if (r >= kTwoPiHi) r -= kTwoPiHi;
  // rounding can still land exactly on 2π
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double reduce_angle_signed(double theta) {
  double r = reduce_angle(theta);
  return r >= kPi ? r - kTwoPi : r;
}

double circle_distance(double a, double b) {
  double d = std::abs(reduce_angle_signed(a - b));
  return std::min(d, kTwoPi - d);
}

double product_angle(std::int64_t p, double theta) {
  const double pd = static_cast<double>(p);
  const double prod = pd * theta;
  const double err = std::fma(pd, theta, -prod);
  const double k = std::nearbyint(prod / kTwoPiHi);
  return subtract_turns(prod, k) + err;
}

double LogComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(factor));
}

std::complex<double> LogComplex::value() const {
  if (is_zero()) return {};
  return std::exp(log_scale) * factor;
}

}  // namespace circid
