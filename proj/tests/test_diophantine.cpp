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

#include <cmath>
#include <string>
#include <numbers>
#include <numeric>

#include "circid/diophantine.hpp"
#include "circid/errors.hpp"

using namespace circid;

namespace {

constexpr double kPiD = std::numbers::pi;

// Independent residual: with c = M 2^E, p·c mod 2 is exact in 128-bit
// integer arithmetic.
double residual_exact(std::int64_t p, double c) {
  int e = 0;
  const double m = std::frexp(c, &e);
  const auto mant = static_cast<__int128>(std::ldexp(m, 53));
  const int shift = 53 - e + 1;  // 2 = 2^shift in units of 2^(e-53)
  const __int128 modulus = static_cast<__int128>(1) << shift;
  __int128 r = (static_cast<__int128>(p) * mant) % modulus;
  if (r < 0) r += modulus;
  const long double frac = std::ldexp(static_cast<long double>(r), e - 53);  // [0, 2)
  return static_cast<double>(std::numbers::pi_v<long double> * std::min(frac, 2.0L - frac));
}

}  // namespace

TEST_CASE("mod_2pi_distance") {
  CHECK(mod_2pi_distance(2.0 * kPiD) <= 1e-12);
  CHECK(std::abs(mod_2pi_distance(3.0 * kPiD) - kPiD) <= 1e-12);
  CHECK(mod_2pi_distance(4.0 * (kPiD / 2.0)) <= 1e-12);
  CHECK(mod_2pi_distance(0.0) == 0.0);
  CHECK(mod_2pi_distance(-0.25) == doctest::Approx(0.25));
  CHECK_THROWS_AS(mod_2pi_distance(1e12), DomainError);
  CHECK_THROWS_AS(mod_2pi_distance(-2e12), DomainError);
}

TEST_CASE("multiple residual keeps precision at large p") {
  const double c = std::sqrt(2.0) - 1.0;
  for (std::int64_t p : {1LL, 977LL, 123456789LL, 999999937LL}) {
    CHECK(std::abs(multiple_residual(p, c) - residual_exact(p, c)) <= 1e-12);
  }
}

TEST_CASE("find_indices on rational coefficients") {
  DiophantineQuery q{{0.5}, 0.1, 1000};
  const IndexSequence s = find_indices(q, 3);
  CHECK(s.indices == std::vector<std::int64_t>{4, 8, 12});

  DiophantineQuery q7{{2.0 * 3.0 / 7.0}, 1e-9, 1000};
  CHECK(find_indices(q7, 2).indices == std::vector<std::int64_t>{7, 14});
}

TEST_CASE("rational coefficients hit exactly the multiples of the denominator") {
  const std::pair<int, int> fractions[] = {{1, 3},  {2, 5},  {3, 7},  {1, 11}, {5, 13},
                                           {4, 9},  {7, 17}, {6, 19}, {9, 23}, {10, 29}};
  for (auto [a, b] : fractions) {
    REQUIRE(std::gcd(a, b) == 1);
    DiophantineQuery q{{2.0 * a / b}, 1e-9, 1000};
    const IndexSequence s = find_indices(q, 4);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.indices[i] == b * static_cast<int>(i + 1));
  }
}

TEST_CASE("find_indices is minimal and verified") {
  const double c1 = std::sqrt(2.0) - 1.0;
  const double c2 = std::sqrt(3.0) - 1.0;
  DiophantineQuery q{{c1, c2}, 0.01, 10'000'000};
  const IndexSequence s = find_indices(q, 5);
  REQUIRE(s.size() == 5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) CHECK(s.indices[i] > s.indices[i - 1]);
    CHECK(mod_2pi_distance(static_cast<double>(s.indices[i]) * c1 * kPiD) < 0.01);
    CHECK(mod_2pi_distance(static_cast<double>(s.indices[i]) * c2 * kPiD) < 0.01);
    CHECK(s.residuals[i] < 0.01);
  }
  // independent rescan below the last hit
  std::vector<std::int64_t> rescan;
  for (std::int64_t p = 1; p <= s.indices.back(); ++p) {
    if (std::max(residual_exact(p, c1), residual_exact(p, c2)) < 0.01) rescan.push_back(p);
  }
  CHECK(rescan == s.indices);
}

TEST_CASE("exhaustion carries the partial hits") {
  DiophantineQuery q{{0.5}, 0.1, 10};
  try {
    find_indices(q, 3);
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.partial().indices == std::vector<std::int64_t>{4, 8});
    CHECK(std::string(e.what()).find("found 2 of 3") != std::string::npos);
  }
}

TEST_CASE("refining indices tighten toward the final tolerance") {
  const double c = std::sqrt(5.0) - 2.0;
  DiophantineQuery q{{c}, 0.02, 10'000'000};
  const IndexSequence s = find_refining_indices(q, 12, 1e-5);
  REQUIRE(s.size() == 12);
  CHECK(s.residuals.back() < 1e-5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.residuals[i] < 0.02);
    if (i) CHECK(s.indices[i] > s.indices[i - 1]);
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(find_indices({{}, 0.1, 10}, 1), DomainError);
  CHECK_THROWS_AS(find_indices({{2.0}, 0.1, 10}, 1), DomainError);
  CHECK_THROWS_AS(find_indices({{0.5}, kPiD, 10}, 1), DomainError);
  CHECK_THROWS_AS(find_indices({{0.5}, 0.1, 2'000'000'000}, 1), DomainError);
  CHECK_THROWS_AS(find_indices({std::vector<double>(9, 0.5), 0.1, 10}, 1), DomainError);
}

TEST_CASE("dirichlet construction") {
  const double c = std::sqrt(2.0) - 1.0;
  {
    const std::vector<double> half{0.5};
    const auto d = dirichlet_construct(half, 4);
    CHECK(d.residual_bound == doctest::Approx(kPiD));
    CHECK(mod_2pi_distance(static_cast<double>(d.p) * 0.5 * kPiD) <= d.residual_bound);
  }
  for (std::int64_t Q : {100, 10000}) {
    const std::vector<double> coeffs{c};
    const auto d = dirichlet_construct(coeffs, Q);
    const double bound = 2.0 * kPiD / std::sqrt(static_cast<double>(Q));
    CHECK(d.residual_bound == doctest::Approx(bound));
    CHECK(d.p == 2 * d.q * static_cast<std::int64_t>(std::sqrt(static_cast<double>(Q))));
    CHECK(multiple_residual(d.p, c) <= bound);
    CHECK(d.achieved <= bound);
  }
  const std::vector<double> two{c, std::sqrt(3.0) - 1.0};
  CHECK_THROWS_AS(dirichlet_construct(two, 10000), DomainError);
  CHECK_NOTHROW(dirichlet_construct(two, 100));
  CHECK_THROWS_AS(dirichlet_construct(std::vector<double>{c}, 10), DomainError);
}
