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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "circid/errors.hpp"

namespace circid {

/// Find p with |p·c_i·π mod 2π| < epsilon for every coefficient c_i.
struct DiophantineQuery {
  std::vector<double> coeffs;  // each in [0, 2); 1 to 8 entries
  double epsilon = 0.02;       // in (0, π)
  std::int64_t p_max = 10'000'000;  // scan cap, at most 1e9

  void validate() const;
};

/// Strictly increasing indices with the largest residual of each.
struct IndexSequence {
  std::vector<std::int64_t> indices;
  std::vector<double> residuals;

  std::size_t size() const noexcept { return indices.size(); }
};

/// The scan ended before enough indices were found. Carries the hits.
class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& what, IndexSequence partial)
      : Error(what), partial_(std::move(partial)) {}

  const IndexSequence& partial() const noexcept { return partial_; }

 private:
  IndexSequence partial_;
};

/// Distance from x to the nearest multiple of 2π, in [0, π]. |x| < 1e12.
double mod_2pi_distance(double x);

/// mod_2pi_distance(p·c·π) computed from the exact product p·c, so the
/// result keeps full precision for p up to 1e9.
double multiple_residual(std::int64_t p, double c);

/// Largest multiple_residual over the coefficients.
double max_residual(std::int64_t p, std::span<const double> coeffs);

/// The `count` smallest p <= p_max whose max residual is below epsilon,
/// by exhaustive ascending scan.
IndexSequence find_indices(const DiophantineQuery& query, std::size_t count);

/// Like find_indices, but the tolerance for the k-th hit shrinks
/// geometrically from query.epsilon to final_epsilon, so residuals along the
/// returned sequence tend to zero. Every hit still satisfies the query.
IndexSequence find_refining_indices(const DiophantineQuery& query, std::size_t count,
                                    double final_epsilon);

struct DirichletApproximation {
  std::int64_t p = 0;                   // 2 q sqrt(Q)
  std::int64_t q = 0;                   // common denominator
  std::vector<std::int64_t> numerators;  // p_i = round(q c_i)
  double residual_bound = 0.0;          // 2π / sqrt(Q)
  double achieved = 0.0;                // max_i p |c_i π - (p_i / q) π|
};

/// Constructive simultaneous approximation: the smallest q < Q^s with
/// |q c_i - p_i| <= 1/Q for all i, and p = 2 q sqrt(Q). Requires Q >= 2,
/// integer sqrt(Q) and Q^s <= 1e7.
DirichletApproximation dirichlet_construct(std::span<const double> coeffs, std::int64_t Q);

}  // namespace circid
