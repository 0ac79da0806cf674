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

#include "circid/special_functions.hpp"

#include <cmath>
#include <string>

#include "circid/errors.hpp"

namespace circid {

namespace {

constexpr int kMaxSeriesTerms = 500;
constexpr double kStopRatio = 1e-17;

void check_argument(double x) {
  if (!(x > 0.0) || !(x <= kMaxBesselArgument)) {
    throw DomainError("bessel argument " + std::to_string(x) +
                      " outside (0, 100]");
  }
}

// Sum of the series I_n(x) / [(x/2)^n / n!] = sum_r q^r n! / ((n+r)! r!),
// q = (x/2)^2. All terms are positive, so forward summation is stable.
double normalized_series(std::int64_t order, double x) {
  const double q = 0.25 * x * x;
  const double n = static_cast<double>(order);
  double term = 1.0;
  double sum = 1.0;
  for (int r = 1; r <= kMaxSeriesTerms; ++r) {
    const double ratio = q / (static_cast<double>(r) * (n + r));
    term *= ratio;
    sum += term;
    // once the term ratio drops below 1/2 the tail is bounded by the term
    if (ratio < 0.5 && term < kStopRatio * sum) return sum;
  }
  throw NumericError("bessel series did not converge for order " +
                         std::to_string(order) + ", x = " + std::to_string(x),
                     term / sum);
}

}  // namespace

double log_bessel_i(std::int64_t order, double x) {
  check_argument(x);
  if (order < 0) order = -order;
  const double n = static_cast<double>(order);
  const double lead = order == 0 ? 0.0 : n * std::log(0.5 * x) - std::lgamma(n + 1.0);
  return lead + std::log(normalized_series(order, x));
}

double log_bessel_ratio(std::int64_t order, double x) {
  if (order == 0) {
    check_argument(x);
    return 0.0;
  }
  return log_bessel_i(order, x) - log_bessel_i(0, x);
}

BesselEval bessel_i(int order, double x) {
  if (order < 0 || order > kMaxBesselOrder) {
    throw DomainError("bessel order " + std::to_string(order) +
                      " outside [0, 200]");
  }
  BesselEval out;
  out.order = order;
  out.argument = x;
  out.log_value = log_bessel_i(order, x);
  out.value = std::exp(out.log_value);
  return out;
}

double bessel_ratio(int order, double x) {
  if (order < 0 || order > kMaxBesselOrder) {
    throw DomainError("bessel order " + std::to_string(order) +
                      " outside [0, 200]");
  }
  return std::exp(log_bessel_ratio(order, x));
}

double check_recurrence(int order, double x) {
  if (order < 1 || order + 1 > kMaxBesselOrder) {
    throw DomainError("recurrence order " + std::to_string(order) +
                      " outside [1, 199]");
  }
  const double lower = bessel_i(order - 1, x).log_value;
  const double mid = bessel_i(order, x).log_value;
  const double upper = bessel_i(order + 1, x).log_value;
  const double log_rhs = std::log(2.0 * order / x) + mid;
  return std::abs(std::exp(lower - log_rhs) - std::exp(upper - log_rhs) - 1.0);
}

}  // namespace circid
