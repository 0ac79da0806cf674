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

#include "circid/circular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "circid/errors.hpp"
#include "circid/quadrature.hpp"
#include "circid/special_functions.hpp"

namespace circid {

namespace {

constexpr std::int64_t kMaxClosedOrder = 1'000'000;
constexpr std::int64_t kMaxQuadratureOrder = 500;
constexpr int kMcValidationGrid = 2048;
constexpr double kMcNegativeTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void reject(const std::string& what) { throw DomainError(what); }

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) reject(std::string(name) + " must be finite");
}

void check_unit_location(double mu) {
  require_finite(mu, "mu");
  if (mu < 0.0 || mu >= kTwoPi) reject("mu must lie in [0, 2pi)");
}

void check_signed_angle(double v, const char* name) {
  require_finite(v, name);
  if (v < -kPi || v >= kPi) reject(std::string(name) + " must lie in [-pi, pi)");
}

void check_skewness(double lambda) {
  require_finite(lambda, "lambda");
  if (lambda < -1.0 || lambda > 1.0) reject("lambda must lie in [-1, 1]");
}

double wrapped_cauchy_base(double phi, double rho) {
  return (1.0 - rho * rho) /
         (kTwoPi * (1.0 + rho * rho - 2.0 * rho * std::cos(phi)));
}

// Unclamped MC density; may dip below zero for invalid rho_bar.
double mc_raw_density(const MCParams& m, double theta) {
  const double ra = m.rho_alpha;
  const double d = 1.0 + ra * ra - 2.0 * ra * std::cos(theta - m.mu);
  const double h =
      1.0 + 2.0 * m.rho_bar *
                (std::cos(theta - m.xi - m.mu) - 2.0 * ra * std::cos(m.xi) +
                 ra * ra * std::cos(theta + m.xi - m.mu)) /
                d;
  return (1.0 - ra * ra) * h / (kTwoPi * d);
}

// e^{ipθ} for integer p with an accurate argument reduction.
std::complex<double> unit_phase(std::int64_t p, double theta) {
  const double a = product_angle(p, theta);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::string_view to_string(CircularFamily family) {
  switch (family) {
    case CircularFamily::kSSWC: return "sswc";
    case CircularFamily::kSSvM: return "ssvm";
    case CircularFamily::kMC: return "mc";
  }
  return "unknown";
}

std::optional<CircularFamily> parse_circular_family(std::string_view name) {
  if (name == "sswc") return CircularFamily::kSSWC;
  if (name == "ssvm") return CircularFamily::kSSvM;
  if (name == "mc") return CircularFamily::kMC;
  return std::nullopt;
}

CircularModel CircularModel::sswc(const SSWCParams& params) {
  check_unit_location(params.mu);
  require_finite(params.rho, "rho");
  if (!(params.rho > 0.0 && params.rho < 1.0)) reject("rho must lie in (0, 1)");
  check_skewness(params.lambda);
  return CircularModel(params);
}

CircularModel CircularModel::ssvm(const SSvMParams& params) {
  check_unit_location(params.mu);
  require_finite(params.kappa, "kappa");
  if (!(params.kappa > 0.0)) reject("kappa must be positive");
  if (params.kappa > kMaxBesselArgument) reject("kappa must not exceed 100");
  check_skewness(params.lambda);
  CircularModel model(params);
  model.log_i0_ = log_bessel_i(0, params.kappa);
  return model;
}

CircularModel CircularModel::mc(const MCParams& params) {
  check_signed_angle(params.mu, "mu");
  check_signed_angle(params.xi, "xi");
  require_finite(params.rho_alpha, "rho_alpha");
  require_finite(params.rho_bar, "rho_bar");
  if (!(params.rho_alpha > 0.0 && params.rho_alpha < 1.0)) {
    reject("rho_alpha must lie in (0, 1)");
  }
  if (!(params.rho_bar > 0.0)) reject("rho_bar must be positive");
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMcValidationGrid; ++k) {
    lowest = std::min(lowest, mc_raw_density(params, kTwoPi * k / kMcValidationGrid));
  }
  if (lowest < -kMcNegativeTolerance) {
    reject("rho_bar too large: mc density is negative (min " +
           std::to_string(lowest) + ") on the validation grid");
  }
  return CircularModel(params);
}

CircularFamily CircularModel::family() const noexcept {
  return static_cast<CircularFamily>(params_.index());
}

double CircularModel::location() const noexcept {
  return std::visit([](const auto& p) { return p.mu; }, params_);
}

double CircularModel::skewness() const {
  return std::visit(
      Overloaded{[](const SSWCParams& p) { return p.lambda; },
                 [](const SSvMParams& p) { return p.lambda; },
                 [](const MCParams&) -> double {
                   throw DomainError("mc family has no skewness parameter");
                 }},
      params_);
}

NamedParams CircularModel::named_parameters() const {
  return std::visit(
      Overloaded{[](const SSWCParams& p) {
                   return NamedParams{{"mu", p.mu}, {"rho", p.rho}, {"lambda", p.lambda}};
                 },
                 [](const SSvMParams& p) {
                   return NamedParams{{"mu", p.mu}, {"kappa", p.kappa}, {"lambda", p.lambda}};
                 },
                 [](const MCParams& p) {
                   return NamedParams{{"mu", p.mu},
                                      {"rho_alpha", p.rho_alpha},
                                      {"rho_bar", p.rho_bar},
                                      {"xi", p.xi}};
                 }},
      params_);
}

double density(const CircularModel& model, double theta) {
  const double log_i0 = model.log_normalizer();
  return std::visit(
      Overloaded{
          [&](const SSWCParams& p) {
            const double phi = theta - p.mu;
            return wrapped_cauchy_base(phi, p.rho) * (1.0 + p.lambda * std::sin(phi));
          },
          [&](const SSvMParams& p) {
            const double phi = theta - p.mu;
            return std::exp(p.kappa * std::cos(phi) - log_i0) / kTwoPi *
                   (1.0 + p.lambda * std::sin(phi));
          },
          [&](const MCParams& p) { return std::max(0.0, mc_raw_density(p, theta)); }},
      model.params());
}

double log_base_cosine_moment(const CircularModel& model, std::int64_t p) {
  return std::visit(
      Overloaded{[&](const SSWCParams& s) {
                   return static_cast<double>(p < 0 ? -p : p) * std::log(s.rho);
                 },
                 [&](const SSvMParams& s) { return log_bessel_ratio(p, s.kappa); },
                 [](const MCParams&) -> double {
                   throw DomainError("mc family is not sine-skewed");
                 }},
      model.params());
}

BaseCosineMoment base_cosine_moment(const CircularModel& model, std::int64_t p) {
  return {p, std::exp(log_base_cosine_moment(model, p))};
}

double base_moment_ratio(const CircularModel& model, std::int64_t p) {
  if (p < 1) throw DomainError("base_moment_ratio needs p >= 1");
  return std::visit(
      Overloaded{[](const SSWCParams& s) { return 1.0 / s.rho - s.rho; },
                 [&](const SSvMParams& s) { return 2.0 * static_cast<double>(p) / s.kappa; },
                 [](const MCParams&) -> double {
                   throw DomainError("base_moment_ratio is undefined for the mc family");
                 }},
      model.params());
}

double base_moment_ratio_by_subtraction(const CircularModel& model, std::int64_t p) {
  if (p < 1) throw DomainError("base_moment_ratio needs p >= 1");
  const double lower = log_base_cosine_moment(model, p - 1);
  const double mid = log_base_cosine_moment(model, p);
  const double upper = log_base_cosine_moment(model, p + 1);
  return std::exp(lower - mid) * -std::expm1(upper - lower);
}

LogComplex trig_moment_scaled(const CircularModel& model, std::int64_t p) {
  if (p == 0) return {};
  const bool negative = p < 0;
  const std::int64_t q = negative ? -p : p;
  LogComplex out;
  if (model.sine_skewed()) {
    // e^{iqμ} α0_q [1 + i λ r_q / 2]
    const double lambda = model.skewness();
    out.log_scale = log_base_cosine_moment(model, q);
    out.factor = unit_phase(q, model.location()) *
                 std::complex<double>(1.0, 0.5 * lambda * base_moment_ratio(model, q));
  } else {
    // ρα^{q-1} e^{iqμ} [q ρ̄ (1-ρα²) e^{iξ} + ρα]
    const auto& m = std::get<MCParams>(model.params());
    const double ra = m.rho_alpha;
    const double b = static_cast<double>(q) * m.rho_bar * (1.0 - ra * ra);
    out.log_scale = static_cast<double>(q - 1) * std::log(ra);
    out.factor = unit_phase(q, m.mu) *
                 (b * std::complex<double>(std::cos(m.xi), std::sin(m.xi)) + ra);
  }
  if (negative) out.factor = std::conj(out.factor);
  return out;
}

TrigMoment trig_moment_closed(const CircularModel& model, std::int64_t p) {
  if (p > kMaxClosedOrder || p < -kMaxClosedOrder) {
    throw DomainError("closed-form moment order must satisfy |p| <= 1e6");
  }
  const std::complex<double> z = trig_moment_scaled(model, p).value();
  return {p, z.real(), z.imag()};
}

TrigMoment trig_moment_quadrature(const CircularModel& model, std::int64_t p,
                                  double abs_tol) {
  if (p > kMaxQuadratureOrder || p < -kMaxQuadratureOrder) {
    throw DomainError("quadrature moment order must satisfy |p| <= 500");
  }
  QuadratureOptions options;
  options.abs_tol = abs_tol;
  const int ap = static_cast<int>(p < 0 ? -p : p);
  options.initial_intervals = std::max(16, 4 * ap);
  const double pd = static_cast<double>(p);
  const auto cos_part = integrate_adaptive(
      [&](double t) { return std::cos(pd * t) * density(model, t); }, 0.0, kTwoPi, options);
  const auto sin_part = integrate_adaptive(
      [&](double t) { return std::sin(pd * t) * density(model, t); }, 0.0, kTwoPi, options);
  return {p, cos_part.value, sin_part.value};
}

MrlEval mean_resultant_length(const CircularModel& model, std::int64_t p) {
  if (p < 0) throw DomainError("mean resultant length needs p >= 0");
  if (p == 0) return {1.0, 0.0};
  const double log_value = trig_moment_scaled(model, p).log_abs();
  return {std::exp(log_value), log_value};
}

SkewDecomposition sine_skew_decomposition(const CircularModel& model, double t) {
  if (!model.sine_skewed()) {
    throw DomainError("sine-skew decomposition needs a sine-skewed family");
  }
  const double mu = model.location();
  const double plus = density(model, mu + t);
  const double minus = density(model, mu - t);
  return {0.5 * (plus + minus), (plus - minus) / (plus + minus)};
}

}  // namespace circid
