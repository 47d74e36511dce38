#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "imex/errors.hpp"
#include "imex/porous.hpp"

using namespace imex;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Grid ordering is x slowest, z fastest.
Vector sample3(const PeriodicGrid& g, const std::function<double(double, double, double)>& f) {
  const int n = g.n();
  Vector u(g.size());
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++idx) u[idx] = f(g.node(i), g.node(j), g.node(l));
  return u;
}

double max_abs(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("constant density is a steady state") {
  const PeriodicGrid g(3, 8);
  const PorousOperator op({0.5, 5.0 / 3.0, 2.0, {}}, g);
  const Vector rho = Vector::Constant(g.size(), 1.7);
  CHECK(max_abs(op.apply_explicit(rho, 0.0)) < 1e-12);
  CHECK(max_abs(op.apply_implicit(rho)) < 1e-12);
  CHECK(max_abs(op.apply_full(rho)) < 1e-12);
}

TEST_CASE("gamma = 0 gives the heat operator") {
  const PeriodicGrid g(3, 16);
  const double a = 0.7;
  const PorousOperator op({a, 0.0, 2.5, {}}, g);
  const Vector rho = sample3(g, [](double x, double y, double z) {
    return 2.0 + std::sin(kTwoPi * x) * std::cos(kTwoPi * y) + 0.3 * std::cos(2 * kTwoPi * z);
  });
  const Vector lap = g.laplacian(rho);
  CHECK(max_abs(op.apply_implicit(rho) + op.apply_explicit(rho, 0.0) - a * lap) < 1e-10 * max_abs(lap));
  CHECK(max_abs(op.apply_full(rho) - a * lap) < 1e-10 * max_abs(lap));
}

TEST_CASE("small single-mode perturbation follows the linearization") {
  const PeriodicGrid g(3, 16);
  const double a = 1.0, gamma = 5.0 / 3.0;
  const PorousOperator op({a, gamma, 1.0, {}}, g);
  std::vector<double> defect;
  for (double eps : {1e-2, 1e-3}) {
    const Vector rho = sample3(g, [&](double x, double, double) { return 2.0 + eps * std::cos(kTwoPi * x); });
    // Linear part: a 2^gamma * (-(2 pi)^2) eps cos(2 pi x).
    const Vector lin = sample3(g, [&](double x, double, double) {
      return -a * std::pow(2.0, gamma) * kTwoPi * kTwoPi * eps * std::cos(kTwoPi * x);
    });
    defect.push_back(max_abs(op.apply_full(rho) - lin));
  }
  CHECK(defect[0] < 10.0 * 1e-4 * kTwoPi * kTwoPi);
  // Quadratic in eps.
  CHECK(std::log10(defect[0] / defect[1]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("splitting telescopes to the unsplit operator") {
  const PeriodicGrid g(3, 16);
  std::mt19937 rng(3);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 3; ++trial) {
    const double c1 = n01(rng), c2 = n01(rng), c3 = n01(rng);
    const Vector rho = sample3(g, [&](double x, double y, double z) {
      return 3.0 + 0.5 * std::tanh(c1) * std::sin(kTwoPi * x + c2) * std::cos(kTwoPi * (y - z) + c3);
    });
    const PorousOperator op({0.3 + trial, 5.0 / 3.0, 1.0 + 2.0 * trial, {}}, g);
    const Vector full = op.apply_full(rho);
    CHECK(max_abs(op.apply_implicit(rho) + op.apply_explicit(rho, 0.0) - full) < 1e-11 * std::max(1.0, max_abs(full)));
    const Vector rhs = rho - 0.1 * op.apply_implicit(rho);
    CHECK(max_abs(op.solve_shifted(1.0, 0.1, rhs) - rho) < 1e-12 * max_abs(rhs));
  }
}

TEST_CASE("non-positive density is a domain error") {
  const PeriodicGrid g(3, 8);
  const PorousOperator op({1.0, 5.0 / 3.0, 1.0, {}}, g);
  Vector rho = Vector::Constant(g.size(), 1.0);
  rho[5] = -0.1;
  CHECK_THROWS_AS(op.apply_explicit(rho, 0.0), DomainError);
  CHECK_THROWS_AS(PorousOperator({0.0, 1.0, 1.0, {}}, g), ParameterError);
  CHECK_THROWS_AS(PorousOperator({1.0, 1.0, -1.0, {}}, g), ParameterError);
  const PeriodicGrid g1(1, 8);
  CHECK_THROWS_AS(PorousManufactured(g1, 1.0, 5.0 / 3.0), ParameterError);
}

TEST_CASE("manufactured forcing closes the equation") {
  // Spatial defect is about 2e-4 relative at N = 32 and 1e-9 at N = 64.
  const PeriodicGrid g(3, 64);
  const double a = 1.0, gamma = 5.0 / 3.0;
  const PorousManufactured mms(g, a, gamma);
  const PorousOperator op({a, gamma, 1.0, {}}, g);
  const double e = std::exp(1.0);
  for (double t : {0.0, 0.4, 1.0}) {
    const Vector ref = sample3(g, [&](double x, double y, double z) {
      return 2 * e + std::exp(std::sin(2 * kTwoPi * x)) * std::cos(kTwoPi * y) * std::cos(kTwoPi * z) * std::cos(t);
    });
    CHECK(max_abs(mms.exact(t) - ref) < 1e-13);
    // rho_t by a centred difference in time.
    const double h = 1e-5;
    const Vector rho_t = (mms.exact(t + h) - mms.exact(t - h)) / (2 * h);
    Vector f = Vector::Zero(g.size());
    mms.add_forcing(t, f);
    CHECK(max_abs(rho_t - op.apply_full(mms.exact(t)) - f) < 1e-7 * max_abs(f));
  }
}

TEST_CASE("small manufactured convergence run") {
  ConvergenceConfig cfg;
  cfg.orders = {1, 2};
  cfg.ks = {std::ldexp(1.0, -3), std::ldexp(1.0, -4), std::ldexp(1.0, -5)};
  cfg.n = 32;
  cfg.delta = 0.19166;
  cfg.sigma = 13.8;
  cfg.t_final = 1.0;
  const ConvergenceReport rep = run_porous_convergence(cfg);
  for (int r : cfg.orders) {
    const auto slope = rep.fitted_rate(r, 3);
    REQUIRE(slope);
    CAPTURE(r);
    CHECK(*slope == doctest::Approx(r).epsilon(0.3 / r));
  }
}

TEST_CASE("gaussian decay conserves the mean and the peak decays") {
  GaussianDecayConfig cfg;
  cfg.base.orders = {1, 2};
  cfg.base.ks = {std::ldexp(1.0, -2), std::ldexp(1.0, -3), std::ldexp(1.0, -4)};
  cfg.base.n = 16;
  cfg.base.delta = 0.794;
  cfg.base.sigma = 2.616;
  cfg.base.t_final = 1.0;
  cfg.substeps = 8;
  const GaussianDecayResult res = run_gaussian_decay(cfg);
  CHECK(res.max_mean_drift < 1e-12);
  for (const auto& row : res.report.rows) CHECK_FALSE(row.unstable);
  REQUIRE_FALSE(res.peak_decay.empty());
  double prev = 1e300;
  for (const auto& [order, t, peak] : res.peak_decay) {
    if (order != 1) continue;
    CHECK(peak < prev);
    prev = peak;
  }

  const PeriodicGrid g(3, 16);
  const Vector rho0 = gaussian_initial_data(g);
  CHECK(rho0.minCoeff() > 1.0);
  CHECK(rho0.maxCoeff() == doctest::Approx(2.0).epsilon(1e-12));

  cfg.base.ks = {0.25, 0.1, 0.05};
  CHECK_THROWS_AS(run_gaussian_decay(cfg), ConfigError);
}
