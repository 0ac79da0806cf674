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

namespace circid {

inline constexpr int kMaxBesselOrder = 200;
inline constexpr double kMaxBesselArgument = 100.0;

/// I_n(x) together with its natural log. `value` underflows to 0 for very
/// high order at small x; `log_value` stays exact there.
struct BesselEval {
  int order = 0;
  double argument = 0.0;
  double value = 0.0;
  double log_value = 0.0;
};

/// Modified Bessel function of the first kind, integer order, from the
/// ascending series. Supported envelope: 0 <= order <= 200, 0 < x <= 100.
/// Throws DomainError outside it and NumericError if the series does not
/// settle within the iteration cap.
BesselEval bessel_i(int order, double x);

/// A_n(x) = I_n(x) / I_0(x), evaluated as exp(log I_n - log I_0).
double bessel_ratio(int order, double x);

/// Relative residual of I_{n-1}(x) - I_{n+1}(x) = (2n/x) I_n(x).
double check_recurrence(int order, double x);

/// log I_n(x) with no cap on the order. The argument envelope (0, 100]
/// still applies. Used for moment sequences of order up to ~1e7.
double log_bessel_i(std::int64_t order, double x);

/// log A_n(x) with no cap on the order.
double log_bessel_ratio(std::int64_t order, double x);

}  // namespace circid
