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

#include "circid/probe.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <type_traits>
#include <utility>
#include <variant>

#include "circid/errors.hpp"

namespace circid {

namespace {

constexpr double kAngleTolerance = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinFinalEpsilon = 1e-9;
constexpr std::int64_t kStep4Search = 100'000;

bool same_scalar(double a, double b) { return a == b; }

// Neville extrapolation of z(h) to h = 0 through the given nodes.
std::complex<double> extrapolate_to_zero(const std::vector<double>& h,
                                         std::vector<std::complex<double>> z) {
  const std::size_t n = z.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      z[i] = (h[i] * z[i + 1] - h[i + m] * z[i]) / (h[i] - h[i + m]);
    }
  }
  return z[0];
}

bool strictly_monotone(const std::vector<double>& v, std::size_t from, bool decreasing) {
  for (std::size_t i = from + 1; i < v.size(); ++i) {
    if (decreasing ? !(v[i] < v[i - 1]) : !(v[i] > v[i - 1])) return false;
  }
  return true;
}

struct IndexPlan {
  std::vector<std::int64_t> indices;
  std::optional<IndexSequence> sequence;
  bool incomplete = false;
  std::string note;
};

// Indices along which p*mu_1 and p*mu_2 both approach 0 mod 2pi, or all
// integers up to p_max when no location needs approximating.
IndexPlan location_indices(double mu_1, double mu_2, const ProbeConfig& config) {
  std::vector<double> coeffs;
  for (double mu : {mu_1, mu_2}) {
    double c = reduce_angle(mu) / kPi;
    if (c >= 2.0) c = 0.0;
    if (c == 0.0) continue;
    const bool dup = std::any_of(coeffs.begin(), coeffs.end(), [&](double d) {
      return std::abs(c - d) * kPi <= kAngleTolerance;
    });
    if (!dup) coeffs.push_back(c);
  }
  IndexPlan plan;
  if (coeffs.empty()) {
    for (std::int64_t p = 1; p <= config.p_max; ++p) plan.indices.push_back(p);
    return plan;
  }
  DiophantineQuery query{coeffs, config.epsilon_dio, config.dio_p_max};
  const double s = static_cast<double>(coeffs.size());
  const double final_eps = std::clamp(
      kPi * std::pow(static_cast<double>(config.dio_p_max) / 20.0, -1.0 / s), kMinFinalEpsilon,
      config.epsilon_dio);
  try {
    plan.sequence = find_refining_indices(query, config.dio_count, final_eps);
  } catch (const ExhaustionError& e) {
    plan.sequence = e.partial();
    plan.incomplete = true;
    plan.note = e.what();
  }
  plan.indices = plan.sequence->indices;
  return plan;
}

SeparationCertificate new_certificate(const CircularModel& m1, const CircularModel& m2) {
  SeparationCertificate cert;
  cert.family = std::string(to_string(m1.family()));
  cert.params_1 = m1.named_parameters();
  cert.params_2 = m2.named_parameters();
  return cert;
}

void finite_difference(SeparationCertificate& cert, std::int64_t p, const TransformValue& v1,
                       const TransformValue& v2) {
  RatioTrace& trace = cert.evidence;
  trace.domain = TraceDomain::kSinglePoint;
  trace.indices.clear();
  trace.log_magnitude.clear();
  trace.phase.clear();
  cert.result = {};
  if (v1.zero != v2.zero) {
    // one side vanishes: record the nonzero side's value as evidence
    const TransformValue& nz = v1.zero ? v2 : v1;
    trace.push(p, nz.log_magnitude, nz.phase);
    cert.result.kind = LimitKind::kFiniteDifference;
    cert.result.center = v1.zero ? std::complex<double>{0.0, 0.0}
                                 : std::complex<double>{std::numeric_limits<double>::infinity(), 0.0};
    cert.diagnostics.push_back("exact zero on one side only at p = " + std::to_string(p));
    return;
  }
  const TransformValue r = ratio(v1, v2);
  trace.push(p, r.log_magnitude, r.phase);
  const std::complex<double> z = r.value();
  cert.result.center = z;
  cert.result.dispersion = std::abs(z - 1.0);
  cert.result.kind = std::abs(z - 1.0) > 64.0 * kEps ? LimitKind::kFiniteDifference
                                                      : LimitKind::kInconclusive;
}

// Ratio trace of one transform along the given indices. Returns false after
// short-circuiting to a finite difference.
bool fill_trace(SeparationCertificate& cert, TransformId id, const CircularModel& m1,
                const CircularModel& m2, const std::vector<std::int64_t>& indices) {
  for (std::int64_t p : indices) {
    const TransformValue v1 = evaluate_transform(id, m1, p);
    const TransformValue v2 = evaluate_transform(id, m2, p);
    if (v1.zero && v2.zero) continue;
    if (v1.zero || v2.zero) {
      finite_difference(cert, p, v1, v2);
      return false;
    }
    const TransformValue r = ratio(v1, v2);
    cert.evidence.push(p, r.log_magnitude, r.phase);
  }
  return true;
}

void classify_into(SeparationCertificate& cert, const ProbeConfig& config) {
  if (cert.evidence.size() < 8) {
    cert.result.kind = LimitKind::kInconclusive;
    cert.diagnostics.push_back("trace too short to classify");
    return;
  }
  cert.result = classify_limit(cert.evidence, config.tol, config.tail_window);
}

SeparationCertificate sweep_certificate(const CircularModel& m1, const CircularModel& m2,
                                        int step, TransformId id, const ProbeConfig& config,
                                        bool extend) {
  SeparationCertificate cert = new_certificate(m1, m2);
  cert.step = step;
  cert.transform = id;
  cert.evidence.transform = id;
  cert.evidence.domain = TraceDomain::kAllIntegers;
  std::vector<std::int64_t> indices;
  for (std::int64_t p = 1; p <= config.p_max; ++p) indices.push_back(p);
  if (!fill_trace(cert, id, m1, m2, indices)) return cert;
  classify_into(cert, config);
  if (!extend) return cert;
  std::int64_t p = config.p_max;
  while (cert.result.kind == LimitKind::kInconclusive && p < config.sweep_cap) {
    p = std::min(2 * p, config.sweep_cap);
    if (!fill_trace(cert, id, m1, m2, {p})) return cert;
    classify_into(cert, config);
  }
  if (p > config.p_max) {
    cert.diagnostics.push_back("sweep extended to p = " + std::to_string(p));
  }
  return cert;
}

SeparationCertificate sequence_certificate(const CircularModel& m1, const CircularModel& m2,
                                           int step, TransformId id,
                                           const ProbeConfig& config) {
  SeparationCertificate cert = new_certificate(m1, m2);
  cert.step = step;
  cert.transform = id;
  cert.evidence.transform = id;
  IndexPlan plan = location_indices(m1.location(), m2.location(), config);
  cert.evidence.domain =
      plan.sequence ? TraceDomain::kIndexSequence : TraceDomain::kAllIntegers;
  cert.index_sequence = plan.sequence;
  if (!fill_trace(cert, id, m1, m2, plan.indices)) return cert;
  classify_into(cert, config);
  if (plan.incomplete) {
    cert.incomplete = true;
    cert.result.kind = LimitKind::kInconclusive;
    cert.diagnostics.push_back("diophantine search exhausted: " + plan.note);
  }
  return cert;
}

SeparationCertificate point_certificate(const CircularModel& m1, const CircularModel& m2,
                                        int step, TransformId id, std::int64_t p) {
  SeparationCertificate cert = new_certificate(m1, m2);
  cert.step = step;
  cert.transform = id;
  cert.evidence.transform = id;
  finite_difference(cert, p, evaluate_transform(id, m1, p), evaluate_transform(id, m2, p));
  return cert;
}

SeparationCertificate probe_sine_skewed(const CircularModel& m1, const CircularModel& m2,
                                        const ProbeConfig& config) {
  const auto shape = [](const CircularModel& m) {
    return std::visit(
        [](const auto& p) -> double {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SSWCParams>) {
            return p.rho;
          } else if constexpr (std::is_same_v<T, SSvMParams>) {
            return p.kappa;
          } else {
            return 0.0;
          }
        },
        m.params());
  };
  if (!same_scalar(shape(m1), shape(m2))) {
    return sweep_certificate(m1, m2, 1, TransformId::kMrlSq, config, true);
  }
  if (!same_scalar(m1.skewness(), m2.skewness())) {
    return sequence_certificate(m1, m2, 2, TransformId::kSine, config);
  }
  if (!same_angle(m1.location(), m2.location())) {
    return point_certificate(m1, m2, 3, TransformId::kMeanDir, 1);
  }
  return sweep_certificate(m1, m2, 0, TransformId::kMrlSq, config, false);
}

SeparationCertificate probe_mc(const CircularModel& m1, const CircularModel& m2,
                               const ProbeConfig& config) {
  const auto& a = std::get<MCParams>(m1.params());
  const auto& b = std::get<MCParams>(m2.params());
  if (!same_scalar(a.rho_alpha, b.rho_alpha)) {
    return sequence_certificate(m1, m2, 1, TransformId::kCosine, config);
  }
  if (!same_scalar(a.rho_bar, b.rho_bar)) {
    return sweep_certificate(m1, m2, 2, TransformId::kMrlSq, config, true);
  }
  if (!same_angle(a.xi, b.xi)) {
    return sequence_certificate(m1, m2, 3, TransformId::kCharf, config);
  }
  if (!same_angle(a.mu, b.mu)) {
    // the proof works at p beyond rho_alpha / (rho_bar (1 - rho_alpha^2))
    const double threshold = a.rho_alpha / (a.rho_bar * (1.0 - a.rho_alpha * a.rho_alpha));
    const auto start = static_cast<std::int64_t>(std::floor(threshold)) + 1;
    SeparationCertificate cert;
    for (std::int64_t p = start; p < start + kStep4Search; ++p) {
      cert = point_certificate(m1, m2, 4, TransformId::kCharf, p);
      if (cert.result.kind == LimitKind::kFiniteDifference) break;
    }
    if (cert.evidence.indices.front() != start) {
      cert.diagnostics.push_back("p increased from " + std::to_string(start));
    }
    return cert;
  }
  return sweep_certificate(m1, m2, 0, TransformId::kMrlSq, config, false);
}

}  // namespace

std::string_view to_string(TransformId id) {
  switch (id) {
    case TransformId::kMrlSq: return "MRL_SQ";
    case TransformId::kSine: return "SINE";
    case TransformId::kMeanDir: return "MEAN_DIR";
    case TransformId::kCosine: return "COSINE";
    case TransformId::kCharf: return "CHARF";
    case TransformId::kConditionalDensity: return "CONDITIONAL_DENSITY";
  }
  return "UNKNOWN";
}

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::kConvergesTo: return "ConvergesTo";
    case LimitKind::kToZero: return "ToZero";
    case LimitKind::kToInfinity: return "ToInfinity";
    case LimitKind::kFiniteDifference: return "FiniteDifference";
    case LimitKind::kUnit: return "Unit";
    case LimitKind::kInconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::string_view to_string(TraceDomain domain) {
  switch (domain) {
    case TraceDomain::kAllIntegers: return "all_integers";
    case TraceDomain::kIndexSequence: return "index_sequence";
    case TraceDomain::kGeometricGrid: return "geometric_grid";
    case TraceDomain::kSinglePoint: return "single_point";
  }
  return "unknown";
}

std::string_view to_string(PairLimit limit) {
  switch (limit) {
    case PairLimit::kToZero: return "ToZero";
    case PairLimit::kToInfinity: return "ToInfinity";
    case PairLimit::kViolated: return "Violated";
  }
  return "Unknown";
}

std::complex<double> TransformValue::value() const {
  if (zero) return {0.0, 0.0};
  return std::polar(std::exp(log_magnitude), phase);
}

void RatioTrace::push(std::int64_t index, double log_mag, double arg) {
  indices.push_back(index);
  log_magnitude.push_back(log_mag);
  phase.push_back(arg);
}

std::complex<double> RatioTrace::value(std::size_t i) const {
  return std::polar(std::exp(log_magnitude.at(i)), phase.at(i));
}

bool SeparationCertificate::separates() const noexcept {
  switch (result.kind) {
    case LimitKind::kConvergesTo:
    case LimitKind::kToZero:
    case LimitKind::kToInfinity:
    case LimitKind::kFiniteDifference:
      return true;
    default:
      return false;
  }
}

bool same_angle(double a, double b) { return circle_distance(a, b) <= kAngleTolerance; }

void ProbeConfig::validate() const {
  if (p_max < 8) throw DomainError("p_max must be at least 8");
  if (tail_window < 2) throw DomainError("tail window must be at least 2");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tol must lie in (0, 1)");
  if (!(epsilon_dio > 0.0 && epsilon_dio < kPi)) {
    throw DomainError("diophantine epsilon must lie in (0, pi)");
  }
  if (dio_count < 8) throw DomainError("diophantine count must be at least 8");
  if (dio_p_max < 1 || dio_p_max > 1'000'000'000) {
    throw DomainError("diophantine p_max must lie in [1, 1e9]");
  }
  if (sweep_cap < p_max) throw DomainError("sweep cap must be at least p_max");
}

TransformValue evaluate_transform(TransformId id, const CircularModel& model, std::int64_t p) {
  const bool sine_skewed = model.sine_skewed();
  switch (id) {
    case TransformId::kMrlSq: {
      const LogComplex m = trig_moment_scaled(model, p);
      if (m.is_zero()) return {true, 0.0, 0.0};
      return {false, 2.0 * m.log_abs(), 0.0};
    }
    case TransformId::kSine:
    case TransformId::kCosine: {
      if (sine_skewed != (id == TransformId::kSine)) break;
      const LogComplex m = trig_moment_scaled(model, p);
      const double part = id == TransformId::kSine ? m.factor.imag() : m.factor.real();
      if (part == 0.0) return {true, 0.0, 0.0};
      return {false, m.log_scale + std::log(std::abs(part)), part < 0.0 ? kPi : 0.0};
    }
    case TransformId::kMeanDir:
    case TransformId::kCharf: {
      if (sine_skewed != (id == TransformId::kMeanDir)) break;
      const LogComplex m = trig_moment_scaled(model, id == TransformId::kMeanDir ? 1 : p);
      if (m.is_zero()) return {true, 0.0, 0.0};
      return {false, m.log_abs(), m.arg()};
    }
    case TransformId::kConditionalDensity:
      break;
  }
  throw DomainError(std::string(to_string(id)) + " does not apply to the " +
                    std::string(to_string(model.family())) + " family");
}

TransformValue ratio(const TransformValue& a, const TransformValue& b) {
  if (a.zero || b.zero) throw DomainError("ratio of transform values needs nonzero operands");
  return {false, a.log_magnitude - b.log_magnitude, reduce_angle_signed(a.phase - b.phase)};
}

LimitClassification classify_limit(const RatioTrace& trace, double tol, std::size_t tail_window) {
  const std::size_t n = trace.size();
  if (n < 8) throw DomainError("classify_limit needs a trace of at least 8 entries");
  if (trace.log_magnitude.size() != n || trace.phase.size() != n) {
    throw DomainError("ratio trace lists differ in length");
  }
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const std::size_t w = std::clamp<std::size_t>(tail_window, 2, n);
  const std::size_t first = n - w;
  const double log_tol = std::log(tol);
  const auto& lm = trace.log_magnitude;

  LimitClassification out;
  if (strictly_monotone(lm, first, true) && lm.back() < log_tol) {
    out.kind = LimitKind::kToZero;
    out.center = 0.0;
    return out;
  }
  if (strictly_monotone(lm, first, false) && lm.back() > -log_tol) {
    out.kind = LimitKind::kToInfinity;
    out.center = std::numeric_limits<double>::infinity();
    return out;
  }

  std::vector<std::complex<double>> z;
  for (std::size_t i = first; i < n; ++i) z.push_back(trace.value(i));
  out.center = z.back();
  for (const auto& v : z) out.dispersion = std::max(out.dispersion, std::abs(v - out.center));

  if (trace.domain == TraceDomain::kAllIntegers && w >= 3) {
    const auto& idx = trace.indices;
    const auto at = [&](std::int64_t p) -> std::optional<std::complex<double>> {
      const auto it = std::lower_bound(idx.begin(), idx.end(), p);
      if (p < 1 || it == idx.end() || *it != p) return std::nullopt;
      return trace.value(static_cast<std::size_t>(it - idx.begin()));
    };
    // a sweep has not settled until it agrees with itself at half the index
    if (const auto half = at(idx.back() / 2)) {
      out.dispersion = std::max(out.dispersion, std::abs(z.back() - *half));
    }
    // geometric nodes p, qp, q²p, ...; consecutive tail nodes would amplify
    // rounding by about (p/w)^w
    for (const double q : {0.75, 0.5}) {
      std::vector<double> h;
      std::vector<std::complex<double>> zg;
      for (std::size_t k = 0; k < w; ++k) {
        const auto p = static_cast<std::int64_t>(
            std::llround(static_cast<double>(idx.back()) * std::pow(q, static_cast<double>(k))));
        const auto v = at(p);
        if (!v) break;
        h.push_back(1.0 / static_cast<double>(p));
        zg.push_back(*v);
      }
      if (h.size() < w) continue;
      const auto full = extrapolate_to_zero(h, zg);
      const auto reduced =
          extrapolate_to_zero({h.begin(), h.end() - 1}, {zg.begin(), zg.end() - 1});
      const double spread = std::abs(full - reduced);
      if (std::isfinite(spread) && spread < out.dispersion) {
        out.center = full;
        out.dispersion = spread;
        out.extrapolated = true;
      }
    }
  }

  if (out.dispersion < tol) {
    out.kind = std::abs(out.center - 1.0) < tol ? LimitKind::kUnit : LimitKind::kConvergesTo;
  } else {
    out.kind = LimitKind::kInconclusive;
  }
  return out;
}

SeparationCertificate probe_pair(const CircularModel& model_1, const CircularModel& model_2,
                                 const ProbeConfig& config) {
  config.validate();
  if (model_1.family() != model_2.family()) {
    throw DomainError("probe_pair needs two models of the same family");
  }
  if (model_1.sine_skewed()) return probe_sine_skewed(model_1, model_2, config);
  return probe_mc(model_1, model_2, config);
}

ConditionCheck check_theorem2_conditions(CircularFamily family,
                                         const std::vector<double>& psi_values,
                                         const std::vector<std::pair<double, double>>& psi_pairs,
                                         std::int64_t p_max) {
  if (family == CircularFamily::kMC) {
    throw DomainError("condition check needs a sine-skewed family");
  }
  if (p_max < 8) throw DomainError("p_max must be at least 8");
  const auto make = [&](double psi) {
    return family == CircularFamily::kSSWC ? CircularModel::sswc({0.0, psi, 0.0})
                                           : CircularModel::ssvm({0.0, psi, 0.0});
  };
  // least-squares slope of log|ratio| on log p over the upper half
  const auto fit = [&](const CircularModel& model, double& residual) {
    std::vector<double> xs, ys;
    for (std::int64_t p = std::max<std::int64_t>(1, p_max / 2); p <= p_max; ++p) {
      xs.push_back(std::log(static_cast<double>(p)));
      ys.push_back(std::log(std::abs(base_moment_ratio_by_subtraction(model, p))));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      residual = std::max(residual, std::abs(ys[i] - my - slope * (xs[i] - mx)));
    }
    return slope;
  };

  ConditionCheck out;
  for (double psi : psi_values) {
    const CircularModel model = make(psi);
    ConditionReport r;
    r.family = family;
    r.psi = psi;
    r.alpha_01 = base_cosine_moment(model, 1).value;
    r.cond_i = std::abs(r.alpha_01) > 1e-12;
    r.cond_ii_inf = std::numeric_limits<double>::infinity();
    for (std::int64_t p = 1; p <= p_max; ++p) {
      r.cond_ii_inf =
          std::min(r.cond_ii_inf, std::abs(base_moment_ratio_by_subtraction(model, p)));
    }
    r.cond_ii_analytic = base_moment_ratio(model, 1);
    r.cond_ii_bound = r.cond_ii_inf > 0.0 ? 2.0 / r.cond_ii_inf : 0.0;
    r.cond_iii_exponent = fit(model, r.cond_iii_residual);
    r.passed = r.cond_i && r.cond_ii_inf > 0.0 && std::isfinite(r.cond_iii_exponent);
    out.psi_reports.push_back(r);
  }

  const double log_tol = std::log(1e-3);
  for (const auto& [psi_1, psi_2] : psi_pairs) {
    const CircularModel m1 = make(psi_1);
    const CircularModel m2 = make(psi_2);
    double res = 0.0;
    const double c = std::max(fit(m1, res), fit(m2, res));
    PairConditionReport r;
    r.psi_1 = psi_1;
    r.psi_2 = psi_2;
    r.exponent = c;
    std::vector<double> down, up;
    for (std::int64_t p = 1; p <= p_max; ++p) {
      const double lr = log_base_cosine_moment(m1, p) - log_base_cosine_moment(m2, p);
      const double lp = std::log(static_cast<double>(p));
      down.push_back(lr + c * lp);
      up.push_back(lr - c * lp);
      r.tail_log_ratio = lr;
    }
    const std::size_t first = down.size() - 5;
    if (strictly_monotone(down, first, true) && down.back() < log_tol) {
      r.limit = PairLimit::kToZero;
    } else if (strictly_monotone(up, first, false) && up.back() > -log_tol) {
      r.limit = PairLimit::kToInfinity;
    }
    out.pair_reports.push_back(r);
  }
  return out;
}

}  // namespace circid
