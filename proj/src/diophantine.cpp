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

#include "circid/diophantine.hpp"

#include <algorithm>
#include <cmath>

#include "circid/angles.hpp"

namespace circid {

namespace {

constexpr double kMaxReducible = 1e12;
constexpr std::int64_t kMaxScan = 1'000'000'000;
constexpr std::int64_t kDirichletBudget = 10'000'000;

}  // namespace

void DiophantineQuery::validate() const {
  if (coeffs.empty() || coeffs.size() > 8) {
    throw DomainError("diophantine query needs between 1 and 8 coefficients");
  }
  for (double c : coeffs) {
    if (!(c >= 0.0 && c < 2.0)) throw DomainError("coefficients must lie in [0, 2)");
  }
  if (!(epsilon > 0.0 && epsilon < kPi)) throw DomainError("epsilon must lie in (0, pi)");
  if (p_max < 1 || p_max > kMaxScan) throw DomainError("p_max must lie in [1, 1e9]");
}

double mod_2pi_distance(double x) {
  if (!(std::abs(x) < kMaxReducible)) {
    throw DomainError("mod_2pi_distance needs |x| < 1e12");
  }
  const double k = std::nearbyint(x / kTwoPiHi);
  const double r = std::abs(std::fma(-k, kTwoPiHi, x) - k * kTwoPiLo);
  return std::min(r, kPi);
}

double multiple_residual(std::int64_t p, double c) {
  // p·c·π mod 2π = π·(p·c mod 2); p·c = prod + err exactly
  const double pd = static_cast<double>(p);
  const double prod = pd * c;
  const double err = std::fma(pd, c, -prod);
  const double frac = (prod - 2.0 * std::nearbyint(0.5 * prod)) + err;
  const double d = std::abs(frac);
  return kPi * std::min(d, 2.0 - d);
}

double max_residual(std::int64_t p, std::span<const double> coeffs) {
  double worst = 0.0;
  for (double c : coeffs) worst = std::max(worst, multiple_residual(p, c));
  return worst;
}

IndexSequence find_indices(const DiophantineQuery& query, std::size_t count) {
  query.validate();
  IndexSequence out;
  if (count == 0) return out;
  for (std::int64_t p = 1; p <= query.p_max; ++p) {
    double worst = 0.0;
    for (double c : query.coeffs) {
      worst = std::max(worst, multiple_residual(p, c));
      if (worst >= query.epsilon) break;
    }
    if (worst < query.epsilon) {
      out.indices.push_back(p);
      out.residuals.push_back(worst);
      if (out.size() == count) return out;
    }
  }
  const std::string what = "found " + std::to_string(out.size()) + " of " +
                           std::to_string(count) + " indices below p_max";
  throw ExhaustionError(what, std::move(out));
}

IndexSequence find_refining_indices(const DiophantineQuery& query, std::size_t count,
                                    double final_epsilon) {
  query.validate();
  if (!(final_epsilon > 0.0)) throw DomainError("final epsilon must be positive");
  final_epsilon = std::min(final_epsilon, query.epsilon);
  IndexSequence out;
  if (count == 0) return out;
  const double shrink =
      count > 1 ? std::pow(final_epsilon / query.epsilon, 1.0 / static_cast<double>(count - 1))
                : 1.0;
  double bound = query.epsilon;
  for (std::int64_t p = 1; p <= query.p_max; ++p) {
    double worst = 0.0;
    for (double c : query.coeffs) {
      worst = std::max(worst, multiple_residual(p, c));
      if (worst >= bound) break;
    }
    if (worst < bound) {
      out.indices.push_back(p);
      out.residuals.push_back(worst);
      if (out.size() == count) return out;
      bound *= shrink;
    }
  }
  const std::string what = "found " + std::to_string(out.size()) + " of " +
                           std::to_string(count) + " refining indices below p_max";
  throw ExhaustionError(what, std::move(out));
}

DirichletApproximation dirichlet_construct(std::span<const double> coeffs, std::int64_t Q) {
  if (coeffs.empty()) throw DomainError("dirichlet_construct needs at least one coefficient");
  if (Q < 2) throw DomainError("Q must be at least 2");
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(Q))));
  if (root * root != Q) throw DomainError("Q must be a perfect square");
  // Q^s with overflow-safe early exit
  std::int64_t budget = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (budget > kDirichletBudget / Q) {
      throw DomainError("Q^s exceeds the search budget of 1e7");
    }
    budget *= Q;
  }

  const double inv_q = 1.0 / static_cast<double>(Q);
  for (std::int64_t q = 1; q < budget; ++q) {
    bool ok = true;
    double worst = 0.0;
    for (double c : coeffs) {
      const double qc = static_cast<double>(q) * c;
      const double gap = std::abs(qc - std::nearbyint(qc));
      worst = std::max(worst, gap);
      if (gap > inv_q) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    DirichletApproximation out;
    out.q = q;
    out.p = 2 * q * root;
    for (double c : coeffs) {
      out.numerators.push_back(std::llround(static_cast<double>(q) * c));
    }
    out.residual_bound = kTwoPi / static_cast<double>(root);
    out.achieved = static_cast<double>(2 * root) * kPi * worst;
    return out;
  }
  throw NumericError("no simultaneous approximation found below Q^s", 0.0);
}

}  // namespace circid
