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
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "circid/circular.hpp"
#include "circid/probe.hpp"

namespace circid {

enum class CylindricalFamily { kAbeLey, kGPareto };

std::string_view to_string(CylindricalFamily family);
std::optional<CylindricalFamily> parse_cylindrical_family(std::string_view name);

/// Sine-skewed circular part with a Weibull linear part.
struct AbeLeyParams {
  double alpha = 1.0;  // Weibull shape
  double beta = 1.0;   // scale rate
  double mu = 0.0;     // [-π, π)
  double kappa = 1.0;  // > 0
  double lambda = 0.0;
};

/// Sine-skewed circular part with a generalized Pareto-type linear part.
struct GParetoParams {
  double sigma = 1.0;
  double delta = 1.0;
  double tau = 0.5;
  double mu = 0.0;     // [-π, π)
  double kappa = 0.5;  // (0, 1)
  double lambda = 0.0;
};

class CylindricalModel {
 public:
  using Params = std::variant<AbeLeyParams, GParetoParams>;

  static CylindricalModel abeley(const AbeLeyParams& params);
  static CylindricalModel gpareto(const GParetoParams& params);

  CylindricalFamily family() const noexcept;
  const Params& params() const noexcept { return params_; }
  double location() const noexcept;
  double skewness() const noexcept;
  double concentration() const noexcept;
  /// Exponent of x in the x -> 0 behaviour of the conditional, plus one.
  double linear_shape() const noexcept;

  NamedParams named_parameters() const;

 private:
  explicit CylindricalModel(Params params) : params_(params) {}

  Params params_;
};

/// At x = 0 the density is finite for linear shape 1, zero above and +inf
/// below.
double joint_density(const CylindricalModel& model, double theta, double x);
double log_joint_density(const CylindricalModel& model, double theta, double x);

double conditional_x_density(const CylindricalModel& model, double theta, double x);
double log_conditional_x_density(const CylindricalModel& model, double theta, double x);

/// Integral over x by quadrature after the substitution to u.
double marginal_theta_density(const CylindricalModel& model, double theta);

/// SSWC model whose rho matches the first trigonometric moment of the
/// quadrature marginal. Throws NumericError if the two densities disagree
/// by more than 1e-6 on a check grid.
CircularModel calibrated_marginal(const CylindricalModel& model);

/// The Abe-Ley model that the generalized Pareto-type model approaches as
/// tau -> 0: alpha = 1/delta, beta = 1/sigma, tanh(kappa) = kappa_gp.
AbeLeyParams tau_limit_params(const GParetoParams& gp);

/// Sup of |f_gp - f_al| over an n_theta x n_x grid on [-π, π) x [0, x_max].
/// Points where either density is infinite are skipped.
double tau_limit_check(const GParetoParams& gp, int n_theta = 50, int n_x = 50,
                       double x_max = 10.0);

SeparationCertificate conditional_ratio_probe(const CylindricalModel& model_1,
                                              const CylindricalModel& model_2,
                                              const ProbeConfig& config = {});

struct CylindricalPoint {
  double theta = 0.0;  // [-π, π)
  double x = 0.0;
};

std::vector<CylindricalPoint> sample_cylindrical(const CylindricalModel& model, std::size_t n,
                                                 std::uint64_t seed);

}  // namespace circid
