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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "circid/angles.hpp"

namespace circid {

using NamedParams = std::vector<std::pair<std::string, double>>;

enum class CircularFamily { kSSWC, kSSvM, kMC };

std::string_view to_string(CircularFamily family);
std::optional<CircularFamily> parse_circular_family(std::string_view name);

/// Sine-skewed wrapped Cauchy: mu in [0, 2π), rho in (0, 1), lambda in [-1, 1].
struct SSWCParams {
  double mu = 0.0;
  double rho = 0.5;
  double lambda = 0.0;
};

/// Sine-skewed von Mises: mu in [0, 2π), kappa in (0, 100], lambda in [-1, 1].
struct SSvMParams {
  double mu = 0.0;
  double kappa = 1.0;
  double lambda = 0.0;
};

/// Möbius-transformed cardioid: mu, xi in [-π, π), rho_alpha in (0, 1),
/// rho_bar > 0 and small enough for the density to stay nonnegative.
struct MCParams {
  double mu = 0.0;
  double rho_alpha = 0.5;
  double rho_bar = 0.1;
  double xi = 0.0;
};

/// One of the three circular families, validated at construction and
/// immutable afterwards.
class CircularModel {
 public:
  using Params = std::variant<SSWCParams, SSvMParams, MCParams>;

  static CircularModel sswc(const SSWCParams& params);
  static CircularModel ssvm(const SSvMParams& params);
  static CircularModel mc(const MCParams& params);

  CircularFamily family() const noexcept;
  const Params& params() const noexcept { return params_; }
  bool sine_skewed() const noexcept { return family() != CircularFamily::kMC; }

  /// Location mu (all families).
  double location() const noexcept;
  /// Skewness lambda; throws DomainError for MC.
  double skewness() const;
  /// log I_0(kappa) for SSvM, 0 otherwise.
  double log_normalizer() const noexcept { return log_i0_; }

  NamedParams named_parameters() const;

 private:
  explicit CircularModel(Params params) : params_(params) {}

  Params params_;
  double log_i0_ = 0.0;
};

/// p-th trigonometric moment: alpha = E cos(pΘ), beta = E sin(pΘ).
struct TrigMoment {
  std::int64_t p = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Cosine moment of the symmetric base density centred at 0.
struct BaseCosineMoment {
  std::int64_t p = 0;
  double value = 1.0;
};

struct MrlEval {
  double value = 1.0;
  double log_value = 0.0;
};

struct SkewDecomposition {
  double symmetric_part = 0.0;
  double odds = 0.0;
};

double density(const CircularModel& model, double theta);

/// alpha_p + i beta_p in scaled form, valid for any integer p.
LogComplex trig_moment_scaled(const CircularModel& model, std::int64_t p);

/// Closed-form moments, |p| <= 1e6.
TrigMoment trig_moment_closed(const CircularModel& model, std::int64_t p);

/// Moments by adaptive quadrature of cos(pθ) f(θ), sin(pθ) f(θ) over
/// [0, 2π). |p| <= 500. Independent of the closed forms.
TrigMoment trig_moment_quadrature(const CircularModel& model, std::int64_t p,
                                  double abs_tol = 1e-10);

/// rho_p = |alpha_p + i beta_p|, p >= 0.
MrlEval mean_resultant_length(const CircularModel& model, std::int64_t p);

/// log alpha_{0,p}: rho^|p| for SSWC, A_p(kappa) for SSvM.
double log_base_cosine_moment(const CircularModel& model, std::int64_t p);
BaseCosineMoment base_cosine_moment(const CircularModel& model, std::int64_t p);

/// (alpha_{0,p-1} - alpha_{0,p+1}) / alpha_{0,p} in simplified form:
/// 1/rho - rho (SSWC) or 2p/kappa (SSvM). p >= 1; MC is rejected.
double base_moment_ratio(const CircularModel& model, std::int64_t p);

/// Same ratio evaluated by subtracting neighbouring base moments.
double base_moment_ratio_by_subtraction(const CircularModel& model,
                                        std::int64_t p);

/// Splits f around mu into its symmetric part and the odds
/// [f(mu+t) - f(mu-t)] / [f(mu+t) + f(mu-t)], which equals lambda·sin t.
SkewDecomposition sine_skew_decomposition(const CircularModel& model, double t);

/// n i.i.d. angles in [0, 2π), deterministic in seed.
std::vector<double> sample(const CircularModel& model, std::size_t n,
                           std::uint64_t seed);

}  // namespace circid
