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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "circid/errors.hpp"
#include "circid/cylindrical.hpp"
#include "circid/probe.hpp"
#include "param_grids.hpp"

using namespace circid;
using circid::testing::abeley_grid;
using circid::testing::gpareto_grid;

namespace {

constexpr double kPiD = std::numbers::pi;

// Joint densities written out directly from the model definitions.
double abeley_joint(const AbeLeyParams& p, double theta, double x) {
  const double g = 1.0 - std::tanh(p.kappa) * std::cos(theta - p.mu);
  return p.alpha * std::pow(p.beta, p.alpha) / (2 * kPiD * std::cosh(p.kappa)) *
         (1 + p.lambda * std::sin(theta - p.mu)) * std::pow(x, p.alpha - 1) *
         std::exp(-std::pow(p.beta * x, p.alpha) * g);
}

double gpareto_joint(const GParetoParams& p, double theta, double x) {
  const double c = 1.0 - p.kappa * std::cos(theta - p.mu);
  const double z = x / p.sigma;
  return (1 + p.lambda * std::sin(theta - p.mu)) * std::sqrt(1 - p.kappa * p.kappa) /
         (2 * kPiD * p.sigma * p.delta) * std::pow(z, 1 / p.delta - 1) *
         std::pow(1 + p.tau / p.delta * std::pow(z, 1 / p.delta) * c, -(p.delta / p.tau + 1));
}

double reference_joint(const CylindricalModel& m, double theta, double x) {
  if (m.family() == CylindricalFamily::kAbeLey) {
    return abeley_joint(std::get<AbeLeyParams>(m.params()), theta, x);
  }
  return gpareto_joint(std::get<GParetoParams>(m.params()), theta, x);
}

double sswc_reference(double mu, double rho, double lambda, double theta) {
  return (1 - rho * rho) / (2 * kPiD * (1 + rho * rho - 2 * rho * std::cos(theta - mu))) *
         (1 + lambda * std::sin(theta - mu));
}

double expected_rho(const CylindricalModel& m) {
  if (m.family() == CylindricalFamily::kAbeLey) return std::tanh(m.concentration() / 2);
  const double k = m.concentration();
  return (1 - std::sqrt(1 - k * k)) / k;
}

template <class F>
double over_half_line(F f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 1e-13);
}

template <class F>
double over_circle(F f) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -kPiD, kPiD, 12, 1e-12);
}

}  // namespace

TEST_CASE("cylindrical density anchors") {
  const auto al = CylindricalModel::abeley({1, 1, 0, 1, 0});
  CHECK(joint_density(al, 0, 0) == doctest::Approx(0.103141041045435247).epsilon(1e-14));
  CHECK(conditional_x_density(al, 0, 0) == doctest::Approx(0.238405844044235112).epsilon(1e-14));

  for (const auto& m : gpareto_grid()) {
    for (double theta : {-2.0, 0.1, 2.9}) {
      for (double x : {0.01, 0.7, 3.0, 40.0}) {
        CHECK(joint_density(m, theta, x) ==
              doctest::Approx(reference_joint(m, theta, x)).epsilon(1e-12));
      }
    }
  }
  for (const auto& m : abeley_grid()) {
    for (double theta : {-2.0, 0.1, 2.9}) {
      for (double x : {0.01, 0.7, 3.0}) {
        CHECK(joint_density(m, theta, x) ==
              doctest::Approx(reference_joint(m, theta, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("density at the origin and outside the support") {
  CHECK(joint_density(CylindricalModel::abeley({2, 1, 0, 1, 0}), 0.3, 0) == 0.0);
  CHECK(std::isinf(joint_density(CylindricalModel::abeley({0.5, 1, 0, 1, 0}), 0.3, 0)));
  CHECK(std::isinf(joint_density(CylindricalModel::gpareto({1, 2, 0.5, 0, 0.5, 0}), 0.3, 0)));
  CHECK(joint_density(CylindricalModel::gpareto({1, 0.5, 0.5, 0, 0.5, 0}), 0.3, 0) == 0.0);
  CHECK_THROWS_AS(joint_density(CylindricalModel::abeley({1, 1, 0, 1, 0}), 0.3, -1), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CylindricalModel::abeley({0, 1, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(CylindricalModel::abeley({1, -1, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(CylindricalModel::abeley({1, 1, 0, 1, 1.5}), DomainError);
  CHECK_THROWS_AS(CylindricalModel::gpareto({1, 1, 0.5, 0, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(CylindricalModel::gpareto({1, 1, 0.0, 0, 0.5, 0}), DomainError);
  CHECK_THROWS_AS(CylindricalModel::gpareto({1, 1, 0.5, 4.0, 0.5, 0}), DomainError);
}

TEST_CASE("conditional densities integrate to one") {
  for (const auto& models : {abeley_grid(), gpareto_grid()}) {
    for (const auto& m : models) {
      for (double theta : {-1.0, 2.0}) {
        const double total =
            over_half_line([&](double x) { return conditional_x_density(m, theta, x); });
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("conditional times marginal is the joint") {
  for (const auto& models : {abeley_grid(), gpareto_grid()}) {
    for (const auto& m : models) {
      for (double theta : {-2.5, 0.4, 1.9}) {
        const double f = marginal_theta_density(m, theta);
        for (double x : {0.05, 1.0, 6.0}) {
          CHECK(conditional_x_density(m, theta, x) * f ==
                doctest::Approx(joint_density(m, theta, x)).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("joint densities integrate to one") {
  std::size_t i = 0;
  for (const auto& models : {abeley_grid(), gpareto_grid()}) {
    for (const auto& m : models) {
      if (i++ % 4 != 0) continue;
      const double total = over_circle([&](double theta) {
        return over_half_line([&](double x) { return reference_joint(m, theta, x); });
      });
      CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("marginal is sine-skewed wrapped Cauchy") {
  for (const auto& models : {abeley_grid(), gpareto_grid()}) {
    for (const auto& m : models) {
      const double mu = m.location();
      for (double t : {0.3, 1.2, 2.8}) {
        const double up = marginal_theta_density(m, mu + t);
        const double down = marginal_theta_density(m, mu - t);
        CHECK((up - down) / (up + down) == doctest::Approx(m.skewness() * std::sin(t)).epsilon(1e-6));
        CHECK(up == doctest::Approx(sswc_reference(mu, expected_rho(m), m.skewness(), mu + t))
                        .epsilon(1e-8));
      }
      const CircularModel c = calibrated_marginal(m);
      const auto& p = std::get<SSWCParams>(c.params());
      CHECK(p.rho == doctest::Approx(expected_rho(m)).epsilon(1e-9));
      CHECK(p.lambda == m.skewness());
    }
  }
}

TEST_CASE("tau limit") {
  const GParetoParams base{1.3, 0.8, 1e-4, 0.4, 0.6, 0.3};
  const AbeLeyParams al = tau_limit_params(base);
  CHECK(al.alpha == doctest::Approx(1.25));
  CHECK(al.beta == doctest::Approx(1 / 1.3));
  CHECK(std::tanh(al.kappa) == doctest::Approx(0.6));

  const double tight = tau_limit_check(base);
  CHECK(tight <= 1e-3);
  GParetoParams looser = base;
  looser.tau = 1e-3;
  const double loose = tau_limit_check(looser);
  CHECK(loose / tight > 5);
  CHECK(loose / tight < 20);
}

TEST_CASE("generalized Pareto probes") {
  const auto gp = [](double sigma, double delta, double tau) {
    return CylindricalModel::gpareto({sigma, delta, tau, 0.3, 0.5, 0.2});
  };
  const auto d = conditional_ratio_probe(gp(1, 0.5, 0.5), gp(1, 1, 0.5));
  CHECK(d.step == 2);
  CHECK(d.result.kind == LimitKind::kToZero);
  CHECK(d.evidence.domain == TraceDomain::kGeometricGrid);

  const auto t = conditional_ratio_probe(gp(1, 1, 1), gp(1, 1, 0.5));
  CHECK(t.step == 3);
  CHECK(t.result.kind == LimitKind::kToInfinity);

  const auto s = conditional_ratio_probe(gp(1, 1, 0.5), gp(2, 1, 0.5));
  CHECK(s.step == 4);
  CHECK(s.result.kind == LimitKind::kFiniteDifference);
  CHECK(std::abs(s.result.center - 2.0) <= 1e-12);
  // the same limit read off the densities near the origin
  const double near0 = conditional_x_density(gp(1, 1, 0.5), 0.3, 1e-12) /
                       conditional_x_density(gp(2, 1, 0.5), 0.3, 1e-12);
  CHECK(near0 == doctest::Approx(2.0).epsilon(1e-9));

  const auto s2 = conditional_ratio_probe(gp(1, 0.5, 0.5), gp(2, 0.5, 0.5));
  CHECK(std::abs(s2.result.center - 4.0) <= 1e-12);

  const auto same = conditional_ratio_probe(gp(1, 1, 0.5), gp(1, 1, 0.5));
  CHECK(same.step == 0);
  CHECK(same.result.kind == LimitKind::kUnit);
}

TEST_CASE("Abe-Ley probes") {
  const auto al = [](double alpha, double beta) {
    return CylindricalModel::abeley({alpha, beta, -0.5, 0.8, 0.4});
  };
  const auto a = conditional_ratio_probe(al(1, 1), al(2, 1));
  CHECK(a.step == 2);
  CHECK(a.result.kind == LimitKind::kFiniteDifference);
  CHECK(std::abs(a.result.center - 0.5) <= 1e-6);

  const auto b = conditional_ratio_probe(al(1.5, 1), al(1.5, 3));
  CHECK(b.step == 3);
  CHECK(b.result.kind == LimitKind::kFiniteDifference);
  CHECK(std::abs(b.result.center - 1.0 / 3.0) <= 1e-6);

  const auto same = conditional_ratio_probe(al(1.5, 1), al(1.5, 1));
  CHECK(same.result.kind == LimitKind::kUnit);
}

TEST_CASE("circular parameters are probed on the marginals") {
  const auto c = conditional_ratio_probe(CylindricalModel::abeley({1, 1, 0.0, 0.8, 0.4}),
                                         CylindricalModel::abeley({1, 1, 0.0, 0.8, -0.2}));
  CHECK(c.step == 1);
  CHECK(c.separates());
  CHECK(c.transform == TransformId::kSine);
  const auto k = conditional_ratio_probe(CylindricalModel::gpareto({1, 1, 0.5, 0, 0.3, 0}),
                                         CylindricalModel::gpareto({1, 1, 0.5, 0, 0.6, 0}));
  CHECK(k.step == 1);
  CHECK(k.result.kind == LimitKind::kToZero);
  CHECK_THROWS_AS(conditional_ratio_probe(CylindricalModel::gpareto({1, 1, 0.5, 0, 0.3, 0}),
                                          CylindricalModel::abeley({1, 1, 0, 1, 0})),
                  DomainError);
}

namespace {

struct Moments {
  double m1 = 0;
  double m2 = 0;
};

// E[X cos Θ] and E[X² cos² Θ] from the joint by nested quadrature.
Moments x_cos_moments(const CylindricalModel& m) {
  Moments out;
  out.m1 = over_circle([&](double th) {
    return std::cos(th) * over_half_line([&](double x) { return x * reference_joint(m, th, x); });
  });
  out.m2 = over_circle([&](double th) {
    const double c = std::cos(th);
    return c * c * over_half_line([&](double x) { return x * x * reference_joint(m, th, x); });
  });
  return out;
}

}  // namespace

TEST_CASE("cylindrical sampler statistics") {
  constexpr std::size_t n = 100000;
  for (const auto& m : {CylindricalModel::abeley({1.7, 0.8, 0.9, 1.2, 0.6}),
                        CylindricalModel::gpareto({1.5, 0.7, 0.2, -1.0, 0.6, -0.5})}) {
    const Moments ref = x_cos_moments(m);
    const double se = std::sqrt((ref.m2 - ref.m1 * ref.m1) / n);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto pts = sample_cylindrical(m, n, seed);
      double sum = 0;
      for (const auto& q : pts) {
        CHECK(q.x >= 0);
        sum += q.x * std::cos(q.theta);
      }
      CHECK(std::abs(sum / n - ref.m1) <= 4 * se);
    }
  }

  const auto sym = CylindricalModel::abeley({1.2, 1.0, 0.7, 2.0, 0.0});
  const auto pts = sample_cylindrical(sym, n, 5);
  double s = 0, s2 = 0;
  for (const auto& q : pts) {
    CHECK(q.theta >= -kPiD);
    CHECK(q.theta < kPiD);
    const double v = std::sin(q.theta - 0.7);
    s += v;
    s2 += v * v;
  }
  CHECK(std::abs(s / n) <= 4 * std::sqrt(s2 / n / n));

  const auto again = sample_cylindrical(sym, 10, 5);
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].theta == pts[i].theta);
    CHECK(again[i].x == pts[i].x);
  }
  CHECK_THROWS_AS(sample_cylindrical(sym, 0, 1), DomainError);
}
