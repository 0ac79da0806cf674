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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>

#include "circid/circular.hpp"
#include "circid/errors.hpp"
#include "circid/sampling.hpp"

namespace circid {

namespace {

constexpr int kTableCells = 4096;

// Offset from the centre of a wrapped Cauchy(rho) by CDF inversion.
double wrapped_cauchy_offset(double rho, double u) {
  return 2.0 * std::atan((1.0 - rho) / (1.0 + rho) * std::tan(kPi * (u - 0.5)));
}

// log of exp(κc)·(1 + ρ² - 2ρc), the von Mises / wrapped Cauchy ratio as a
// function of c = cos φ, up to constants.
double log_vm_wc_ratio(double kappa, double rho, double c) {
  return kappa * c + std::log(1.0 + rho * rho - 2.0 * rho * c);
}

}  // namespace

CircularSampler::CircularSampler(const CircularModel& model) : model_(model) {
  switch (model.family()) {
    case CircularFamily::kSSWC:
      envelope_rho_ = std::get<SSWCParams>(model.params()).rho;
      break;
    case CircularFamily::kSSvM: {
      const double kappa = std::get<SSvMParams>(model.params()).kappa;
      // Best-Fisher choice of the envelope concentration
      const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
      double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
      if (!(rho > 1e-8)) rho = 0.0;
      envelope_rho_ = std::min(rho, 1.0 - 1e-12);
      // acceptance constant: maximum of the ratio over c = cos φ in [-1, 1]
      double best = std::max(log_vm_wc_ratio(kappa, envelope_rho_, -1.0),
                             log_vm_wc_ratio(kappa, envelope_rho_, 1.0));
      if (envelope_rho_ > 0.0) {
        const double c = (1.0 + envelope_rho_ * envelope_rho_ - 2.0 * envelope_rho_ / kappa) /
                         (2.0 * envelope_rho_);
        if (c > -1.0 && c < 1.0) best = std::max(best, log_vm_wc_ratio(kappa, envelope_rho_, c));
      }
      log_accept_max_ = best;
      break;
    }
    case CircularFamily::kMC: {
      using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
      nodes_.resize(kTableCells + 1);
      node_density_.resize(kTableCells + 1);
      cumulative_.resize(kTableCells + 1);
      const auto f = [&](double t) { return density(model_, t); };
      cumulative_[0] = 0.0;
      for (int k = 0; k <= kTableCells; ++k) {
        nodes_[k] = kTwoPi * k / kTableCells;
        node_density_[k] = f(nodes_[k]);
      }
      for (int k = 0; k < kTableCells; ++k) {
        const double mass = Rule::integrate(f, nodes_[k], nodes_[k + 1], 0, 0.0);
        cumulative_[k + 1] = cumulative_[k] + std::max(0.0, mass);
      }
      const double total = cumulative_.back();
      for (double& c : cumulative_) c /= total;
      break;
    }
  }
}

double CircularSampler::draw_base_offset(Rng& rng) const {
  if (model_.family() == CircularFamily::kSSWC) {
    return wrapped_cauchy_offset(envelope_rho_, rng.uniform());
  }
  const double kappa = std::get<SSvMParams>(model_.params()).kappa;
  for (;;) {
    const double phi = wrapped_cauchy_offset(envelope_rho_, rng.uniform());
    const double log_ratio = log_vm_wc_ratio(kappa, envelope_rho_, std::cos(phi));
    if (std::log(rng.uniform()) <= log_ratio - log_accept_max_) return phi;
  }
}

double CircularSampler::draw_tabulated(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t k = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  k = std::clamp<std::size_t>(k, 1, kTableCells) - 1;
  const double width = nodes_[k + 1] - nodes_[k];
  const double mass = cumulative_[k + 1] - cumulative_[k];
  const double fa = node_density_[k];
  const double fb = node_density_[k + 1];
  const double linear_mass = 0.5 * width * (fa + fb);
  if (mass <= 0.0 || linear_mass <= 0.0) return nodes_[k];
  // invert the CDF of the linear density through the cell endpoints
  const double target = (u - cumulative_[k]) / mass * linear_mass;
  const double slope = (fb - fa) / width;
  const double disc = std::max(0.0, fa * fa + 2.0 * slope * target);
  const double s = 2.0 * target / (fa + std::sqrt(disc));
  return reduce_angle(nodes_[k] + std::clamp(std::isfinite(s) ? s : 0.0, 0.0, width));
}

double CircularSampler::draw(Rng& rng) const {
  if (model_.family() == CircularFamily::kMC) return draw_tabulated(rng);
  const double mu = model_.location();
  const double lambda = model_.skewness();
  const double phi = draw_base_offset(rng);
  const bool keep = rng.uniform() < 0.5 * (1.0 + lambda * std::sin(phi));
  return reduce_angle(keep ? mu + phi : mu - phi);
}

std::vector<double> sample(const CircularModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  const CircularSampler sampler(model);
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = sampler.draw(rng);
  return out;
}

}  // namespace circid
