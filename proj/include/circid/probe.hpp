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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circid/circular.hpp"
#include "circid/diophantine.hpp"

namespace circid {

enum class TransformId {
  kMrlSq,              // rho_p^2
  kSine,               // beta_p
  kMeanDir,            // alpha_1 + i beta_1
  kCosine,             // alpha_p (mc)
  kCharf,              // alpha_p + i beta_p (mc)
  kConditionalDensity  // f(x | theta) of a cylindrical model
};

enum class LimitKind {
  kConvergesTo,
  kToZero,
  kToInfinity,
  kFiniteDifference,
  kUnit,
  kInconclusive
};

enum class TraceDomain { kAllIntegers, kIndexSequence, kGeometricGrid, kSinglePoint };

std::string_view to_string(TransformId id);
std::string_view to_string(LimitKind kind);
std::string_view to_string(TraceDomain domain);

/// A complex transform value in polar log form. `zero` marks an exact zero.
struct TransformValue {
  bool zero = false;
  double log_magnitude = 0.0;
  double phase = 0.0;

  std::complex<double> value() const;
};

/// Ratios phi(model_1) / phi(model_2) at a list of indices.
struct RatioTrace {
  TransformId transform = TransformId::kMrlSq;
  TraceDomain domain = TraceDomain::kAllIntegers;
  std::vector<std::int64_t> indices;
  std::vector<double> abscissae;  // x values of grid traces, else empty
  std::vector<double> log_magnitude;
  std::vector<double> phase;

  std::size_t size() const noexcept { return indices.size(); }
  void push(std::int64_t index, double log_mag, double arg);
  std::complex<double> value(std::size_t i) const;
};

struct LimitClassification {
  LimitKind kind = LimitKind::kInconclusive;
  std::complex<double> center{0.0, 0.0};
  double dispersion = 0.0;
  bool extrapolated = false;
};

/// Classify the tail of a ratio trace. On kAllIntegers the plain spread also
/// compares the last value with the one at half its index, and a polynomial
/// extrapolation in 1/p through geometric nodes p, qp, q²p, ... competes
/// with it. The estimate with smaller dispersion wins.
LimitClassification classify_limit(const RatioTrace& trace, double tol = 1e-3,
                                   std::size_t tail_window = 5);

struct ProbeConfig {
  std::int64_t p_max = 400;
  std::size_t tail_window = 5;
  double tol = 1e-3;
  double epsilon_dio = 0.02;
  std::size_t dio_count = 12;
  std::int64_t dio_p_max = 10'000'000;
  std::int64_t sweep_cap = 1'000'000;

  void validate() const;
};

struct SeparationCertificate {
  std::string family;
  NamedParams params_1;
  NamedParams params_2;
  int step = 0;
  TransformId transform = TransformId::kMrlSq;
  LimitClassification result;
  RatioTrace evidence;
  std::optional<IndexSequence> index_sequence;  // empty when not Diophantine
  std::vector<std::string> diagnostics;
  bool incomplete = false;

  bool separates() const noexcept;
};

TransformValue evaluate_transform(TransformId id, const CircularModel& model, std::int64_t p);

/// Ratio a / b. Both must be nonzero.
TransformValue ratio(const TransformValue& a, const TransformValue& b);

SeparationCertificate probe_pair(const CircularModel& model_1, const CircularModel& model_2,
                                 const ProbeConfig& config = {});

/// Angles equal within 1e-12 on the circle.
bool same_angle(double a, double b);

enum class PairLimit { kToZero, kToInfinity, kViolated };

std::string_view to_string(PairLimit limit);

struct ConditionReport {
  CircularFamily family = CircularFamily::kSSWC;
  double psi = 0.0;
  double alpha_01 = 0.0;
  bool cond_i = false;
  double cond_ii_inf = 0.0;       // min over 1 <= p <= p_max of |ratio|
  double cond_ii_analytic = 0.0;  // 1/rho - rho or 2/kappa
  double cond_ii_bound = 0.0;     // M with cond_ii_inf > 1/M
  double cond_iii_exponent = 0.0;
  double cond_iii_residual = 0.0;  // max abs residual of the log-log fit
  bool passed = false;
};

struct PairConditionReport {
  double psi_1 = 0.0;
  double psi_2 = 0.0;
  double exponent = 0.0;
  double tail_log_ratio = 0.0;  // log(alpha0_p(psi_1) / alpha0_p(psi_2)) at p_max
  PairLimit limit = PairLimit::kViolated;
};

struct ConditionCheck {
  std::vector<ConditionReport> psi_reports;
  std::vector<PairConditionReport> pair_reports;
};

/// psi is rho for sswc and kappa for ssvm.
ConditionCheck check_theorem2_conditions(CircularFamily family,
                                         const std::vector<double>& psi_values,
                                         const std::vector<std::pair<double, double>>& psi_pairs,
                                         std::int64_t p_max = 400);

}  // namespace circid
