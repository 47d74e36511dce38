#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "imex/channel_flow.hpp"
#include "imex/errors.hpp"
#include "imex/recipes.hpp"
#include "imex/stability_diagram.hpp"

using namespace imex;

TEST_CASE("mode assembly") {
  const ChannelMode m0 = build_mode(0.0, 16);
  CHECK(m0.q_dense().cwiseAbs().maxCoeff() == 0.0);
  CHECK(m0.h == doctest::Approx(1.0 / 17));

  const double xi = 3.0;
  const ChannelMode m = build_mode(xi, 16, 0.4);
  const Eigen::MatrixXd a0 = m.a0_dense();
  const double h2 = m.h * m.h;
  for (int i = 0; i < 16; ++i) {
    CHECK(a0(i, i) == doctest::Approx(-2.0 / h2 - xi * xi));
    if (i + 1 < 16) {
      CHECK(a0(i, i + 1) == doctest::Approx(1.0 / h2));
      CHECK(a0(i + 1, i) == doctest::Approx(1.0 / h2));
    }
  }
  CHECK((a0 - a0.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a0);
  CHECK(es.eigenvalues().maxCoeff() < 0.0);

  const Eigen::MatrixXd q = m.q_dense();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  CHECK(svd.singularValues()[2] < 1e-12 * svd.singularValues()[0]);
  CHECK((m.b_dense() - ((1.0 - 0.4) * a0 + q)).norm() < 1e-12 * a0.norm());
  CHECK((build_mode(-xi, 16).q_dense() - q).norm() < 1e-14 * q.norm());

  // Large wavenumbers stay finite.
  const ChannelMode big = build_mode(2000.0, 64);
  CHECK(big.q_dense().allFinite());
  CHECK(big.a.allFinite());
  CHECK(big.b.allFinite());

  CHECK_THROWS_AS(build_mode(1.0, 3), ParameterError);
  CHECK_THROWS_AS(w2_mode(build_mode(1.0, 513)), ParameterError);
  CHECK_THROWS_AS(wmax_sweep({1.0}, 513), ParameterError);
}

TEST_CASE("zero wavenumber collapses to one point") {
  const ChannelMode m = build_mode(0.0, 32);
  const W2Summary w = w2_mode(m, 64);
  CHECK(std::abs(w.w_max) < 1e-12);
  CHECK(std::abs(w.w_min) < 1e-12);
  for (double sigma : {0.25, 1.0, 3.0}) {
    const SpectralSet s = shift_w2(w.set, sigma);
    for (const auto& p : s.points) CHECK(std::abs(p - (1.0 - 1.0 / sigma)) < 1e-12);
  }
}

TEST_CASE("W_2 extremes, imaginary band and eigenvalues") {
  for (int ny : {32, 64}) {
    for (double xi : {1.0, 5.0}) {
      const ChannelMode m = build_mode(xi, ny);
      const W2Summary w = w2_mode(m, 128);
      CAPTURE(ny);
      CAPTURE(xi);
      CHECK(std::abs(w.w_min) < 1e-6);
      CHECK(w.w_max > 0.3);
      CHECK(w.w_max < 1.0 + m.h);
      CHECK(w.max_abs_imag <= 2.0 * m.h);
      const auto [lo, hi] = w_p_real_range(m.base_pair(), 2.0);
      CHECK(lo == doctest::Approx(w.w_min).epsilon(1e-10));
      CHECK(hi == doctest::Approx(w.w_max).epsilon(1e-10));
      const SpectralSet eig = generalized_eigenvalues(m.base_pair());
      CHECK(eig.max_real() == doctest::Approx(w.w_max).epsilon(1e-6));
      CHECK(std::abs(eig.min_real() - w.w_min) < 1e-6);
    }
  }
}

TEST_CASE("shifted set equals the directly computed set") {
  const double sigma = 0.3;
  const ChannelMode m = build_mode(2.0, 32, sigma);
  const SpectralSet mapped = shift_w2(w2_mode(m, 128).set, sigma);
  const SplittingPair direct_pair{sigma * m.a0_dense().cast<std::complex<double>>(),
                                  m.b_dense().cast<std::complex<double>>(), std::nullopt};
  const SpectralSet direct = w_p_set(direct_pair, 2.0, 128);
  for (const auto& p : mapped.points) CHECK(direct.outside_distance(p) < 1e-10);
  for (const auto& p : direct.points) CHECK(mapped.outside_distance(p) < 1e-10);
}

TEST_CASE("W_max sweep") {
  const WmaxSweep s = wmax_sweep({1.0, 5.0, 25.0, 50.0}, 32);
  REQUIRE(s.rows.size() == 4);
  CHECK(s.monotone_decreasing);
  for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i].w_max < s.rows[i - 1].w_max);

  const WmaxSweep far = wmax_sweep({1.0, 200.0}, 64);
  CHECK(far.rows[1].w_max < far.rows[0].w_max);

  const WmaxSweep dup = wmax_sweep({5.0, 5.0}, 32);
  CHECK(dup.rows[0].w_max == dup.rows[1].w_max);
  CHECK(dup.rows[0].w_min == dup.rows[1].w_min);

  // Mesh stability.
  const double w128 = wmax_sweep({1.0}, 128).rows[0].w_max;
  const double w256 = wmax_sweep({1.0}, 256).rows[0].w_max;
  CHECK(std::abs(w128 - w256) <= 0.02);
  CHECK(w256 == doctest::Approx(0.93).epsilon(0.01 / 0.93));
}

TEST_CASE("higher wavenumbers sit inside the first one") {
  const int ny = 64;
  const double sigma = 0.25;
  const double xi1 = 1.0;
  const SpectralSet outer = shift_w2(w2_mode(build_mode(xi1, ny), 128).set, sigma);
  for (int m = 2; m <= 4; ++m) {
    const ChannelMode mode = build_mode(m * xi1, ny);
    const SpectralSet inner = shift_w2(w2_mode(mode, 128).set, sigma);
    for (const auto& p : inner.points) CHECK(outer.outside_distance(p) <= 4.0 * mode.h / sigma);
  }
}

TEST_CASE("channel parameters on a coarse mesh") {
  const int ny = 64;
  const ChannelParameters p = channel_parameters(2.0 * std::numbers::pi, ny, 5, 0.1, 128);
  CHECK(p.xi1 == doctest::Approx(1.0));
  CHECK(p.certified);
  CHECK_FALSE(p.sbdf3_feasible);
  const IntervalParams oracle = optimal_interval_params(5, 1.0 - p.w_max, 1.0 - p.w_min, 0.1);
  CHECK(p.delta == doctest::Approx(oracle.delta));
  CHECK(p.sigma == doctest::Approx(oracle.sigma));
  const ChannelMode m = build_mode(p.xi1, ny, p.sigma);
  CHECK(certify_mode(m, w2_mode(m, 128).set, 5, p.delta));
  // Too large a delta for the interval fails certification.
  CHECK_FALSE(certify_mode(m, w2_mode(m, 128).set, 5, 1.0));

  const ChannelParameters p1 = channel_parameters(2.0 * std::numbers::pi, ny, 1, 0.1, 128);
  CHECK(p1.delta == 1.0);
  CHECK(p1.sigma > 0.5);
  CHECK(p1.certified);
  CHECK_THROWS_AS(channel_parameters(0.0, ny, 3, 0.1), ParameterError);
}

TEST_CASE("mode integration") {
  const int ny = 32;
  std::mt19937 rng(9);
  std::normal_distribution<double> n01;
  Vector u0(ny);
  for (auto& x : u0) x = n01(rng);

  const ChannelParameters p = channel_parameters(2.0 * std::numbers::pi, ny, 5, 0.1, 128);
  const ChannelMode m = build_mode(p.xi1, ny, p.sigma);
  const auto norms = integrate_mode(m, generate_scheme(5, p.delta), 1e3, 100, u0);
  REQUIRE(norms.size() >= 100);
  for (double n : norms) CHECK(n < 1e4 * u0.norm());

  const auto zeros = integrate_mode(m, generate_scheme(5, p.delta), 1e3, 20, Vector::Zero(ny));
  for (double n : zeros) CHECK(n == 0.0);

  const ChannelMode unit = build_mode(1.0, ny, 1.0);
  for (double n : integrate_mode(unit, generate_scheme(1, 1.0), 0.1, 200, u0)) CHECK(n <= 1.0001 * u0.norm());

  // SBDF3 with sigma = 1 blows up for some step in the probe ladder.
  bool blew_up = false;
  for (int e = 0; e <= 20 && !blew_up; ++e) {
    try {
      const auto h = integrate_mode(unit, generate_scheme(3, 1.0), std::ldexp(1.0, e), 2000, u0);
      blew_up = h.back() > 1e6 * u0.norm();
    } catch (const InstabilityError&) {
      blew_up = true;
    }
  }
  CHECK(blew_up);
}
