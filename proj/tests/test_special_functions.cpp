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

#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>

#include "circid/errors.hpp"
#include "circid/special_functions.hpp"

using namespace circid;

namespace {

// Extended-precision series, 60 terms past the peak.
long double series_oracle(int n, long double x) {
  const long double q = 0.25L * x * x;
  long double term = std::pow(0.5L * x, static_cast<long double>(n)) / std::tgamma(n + 1.0L);
  long double sum = term;
  for (int r = 1; r < 400; ++r) {
    term *= q / (static_cast<long double>(r) * (n + r));
    sum += term;
  }
  return sum;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("bessel_i reference values") {
  CHECK(bessel_i(0, 1e-12).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rel(bessel_i(1, 2.0).value, 1.5906368546373291) <= 1e-12);
  CHECK(rel(bessel_i(1, 2.0).value, static_cast<double>(series_oracle(1, 2.0L))) <= 1e-12);

  const double i5 = bessel_i(5, 2.0).value;
  CHECK(i5 >= 1.0 / 120.0);
  CHECK(i5 <= std::exp(1.0) / 120.0);
}

TEST_CASE("bessel_i agrees with independent oracles across the envelope") {
  for (int n : {0, 1, 2, 5, 13, 40, 90, 150, 200}) {
    for (double x : {0.01, 0.5, 1.0, 2.0, 7.5, 20.0, 55.0, 100.0}) {
      const BesselEval e = bessel_i(n, x);
      if (e.value >= std::numeric_limits<double>::min()) {
        CHECK(e.log_value == doctest::Approx(std::log(e.value)).epsilon(1e-15));
      }
      const double boost_value = boost::math::cyl_bessel_i(n, x);
      if (boost_value > 1e-290 && std::isfinite(boost_value)) {
        CHECK_MESSAGE(rel(e.value, boost_value) <= 1e-12, "n=" << n << " x=" << x);
      }
      const long double oracle = series_oracle(n, x);
      if (x <= 20.0 && oracle > 1e-290L) {
        CHECK_MESSAGE(rel(e.value, static_cast<double>(oracle)) <= 1e-12, "n=" << n << " x=" << x);
      }
    }
  }
}

TEST_CASE("log value stays finite where the value underflows") {
  const BesselEval e = bessel_i(200, 0.01);
  CHECK(e.value == 0.0);
  CHECK(std::isfinite(e.log_value));
  CHECK(e.log_value < -1800.0);
  CHECK(rel(log_bessel_i(5000, 3.0),
            5000.0 * std::log(1.5) - std::lgamma(5001.0) +
                std::log1p(2.25 / 5001.0 + 2.25 * 2.25 / (2.0 * 5001.0 * 5002.0))) <= 1e-12);
}

TEST_CASE("bessel_ratio values and monotonicity") {
  CHECK(bessel_ratio(0, 3.7) == 1.0);
  CHECK(rel(bessel_ratio(1, 2.0), 0.6977746579640078) <= 1e-12);
  for (double k : {0.5, 1.0, 2.0, 5.0, 30.0}) {
    for (int p = 0; p < 60; ++p) CHECK(bessel_ratio(p + 1, k) < bessel_ratio(p, k));
  }
  for (int p = 1; p < 30; ++p) {
    CHECK(bessel_ratio(p, 1.0) < bessel_ratio(p, 2.0));
    CHECK(bessel_ratio(p, 2.0) < bessel_ratio(p, 5.0));
  }
}

TEST_CASE("ratio decay between two concentrations is bounded by the power law") {
  // A_p(k)/A_p(k') <= (k/k')^p exp(k^2/4) I0(k')/I0(k) from the two-sided bound
  const double c = std::exp(0.25) * bessel_i(0, 2.0).value / bessel_i(0, 1.0).value;
  CHECK(bessel_ratio(10, 1.0) / bessel_ratio(10, 2.0) <= c * std::pow(0.5, 10));
}

TEST_CASE("two-sided series bound") {
  for (double k : {0.5, 1.0, 2.0, 5.0}) {
    for (int p = 1; p <= 30; ++p) {
      const double lower = p * std::log(0.5 * k) - std::lgamma(p + 1.0);
      const double log_i = bessel_i(p, k).log_value;
      CHECK(lower <= log_i);
      CHECK(log_i <= lower + 0.25 * k * k);
    }
  }
}

TEST_CASE("recurrence residual") {
  CHECK(check_recurrence(1, 2.0) <= 1e-10);
  CHECK(check_recurrence(15, 0.5) <= 1e-10);
  for (int p = 1; p <= 30; ++p) {
    for (int j = 1; j <= 20; ++j) {
      const double x = 5.0 * j;
      CHECK(check_recurrence(p, x) <= 1e-10);
    }
  }
}

TEST_CASE("envelope enforcement") {
  CHECK_THROWS_AS(bessel_i(1, 150.0), DomainError);
  CHECK_THROWS_AS(check_recurrence(1, 1e6), DomainError);
  CHECK_THROWS_AS(bessel_i(1, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_i(201, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(-1, 1.0), DomainError);
  CHECK_THROWS_AS(check_recurrence(0, 1.0), DomainError);
}
