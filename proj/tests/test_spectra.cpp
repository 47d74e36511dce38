#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imex/errors.hpp"
#include "imex/spectra.hpp"

using namespace imex;
using cd = std::complex<double>;

namespace {

ComplexMatrix rotation_block_l() {
  ComplexMatrix l = ComplexMatrix::Zero(3, 3);
  l(0, 0) = -0.2;
  l(1, 1) = -2.0;
  l(1, 2) = 2.0;
  l(2, 1) = -2.0;
  l(2, 2) = -2.0;
  return l;
}

ComplexMatrix coupled_pair_l() {
  ComplexMatrix l(2, 2);
  l << -2.0, 1.0, 1.0, -2.0;
  return l;
}

ComplexMatrix random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

ComplexMatrix random_negative_definite(int n, std::mt19937& rng) {
  const ComplexMatrix m = random_matrix(n, rng);
  return -(m * m.adjoint() + 0.5 * ComplexMatrix::Identity(n, n));
}

cd random_rayleigh(const ComplexMatrix& x, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(x.rows());
  for (auto& e : v) e = cd(g(rng), g(rng));
  v.normalize();
  return v.dot(x * v);
}

double dist_to_set(cd q, const std::vector<cd>& pts) {
  double d = 1e300;
  for (const auto& p : pts) d = std::min(d, std::abs(q - p));
  return d;
}

}  // namespace

TEST_CASE("generalized eigenvalue examples") {
  const ComplexMatrix a0 = -ComplexMatrix::Identity(3, 3);
  auto eig = generalized_eigenvalues({a0, rotation_block_l(), std::nullopt});
  REQUIRE(eig.points.size() == 3);
  for (cd e : {cd(-0.2), cd(-2, 2), cd(-2, -2)}) CHECK(dist_to_set(e, eig.points) < 1e-12);

  eig = generalized_eigenvalues({-ComplexMatrix::Identity(2, 2), coupled_pair_l(), std::nullopt});
  for (cd e : {cd(-3), cd(-1)}) CHECK(dist_to_set(e, eig.points) < 1e-12);

  eig = generalized_eigenvalues({-ComplexMatrix::Identity(1, 1), -ComplexMatrix::Identity(1, 1), std::nullopt});
  CHECK(std::abs(eig.points[0] + 1.0) < 1e-14);
}

TEST_CASE("numerical range of simple matrices") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  auto w = numerical_range(d);
  CHECK(w.points.size() == 2);
  CHECK(w.min_real() == doctest::Approx(1.0));
  CHECK(w.max_real() == doctest::Approx(3.0));
  CHECK(w.max_abs_imag() < 1e-14);

  // Nilpotent Jordan block: disk of radius 1/2.
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  w = numerical_range(j, 512);
  for (const auto& p : w.points) CHECK(std::abs(std::abs(p) - 0.5) < 1e-12);
  std::mt19937 rng(3);
  double far = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const cd q = random_rayleigh(j, rng);
    CHECK(w.contains(q));
    far = std::max(far, std::abs(q));
  }
  CHECK(far > 0.45);
  CHECK_FALSE(w.contains(0.51));
}

TEST_CASE("normal matrices: hull equals eigenvalue hull") {
  auto check_normal = [](const ComplexMatrix& x) {
    const SpectralSet w = numerical_range(x, 256);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(x);
    std::vector<cd> ev(es.eigenvalues().data(), es.eigenvalues().data() + x.rows());
    const std::vector<cd> hull = convex_hull(ev);
    CHECK(w.points.size() == hull.size());
    for (const auto& p : w.points) CHECK(dist_to_set(p, hull) < 1e-10);
    for (const auto& p : hull) CHECK(dist_to_set(p, w.points) < 1e-10);
  };
  check_normal(rotation_block_l());
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    // U diag(lambda) U^* with a random unitary U.
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, rng));
    const ComplexMatrix u = qr.householderQ();
    std::normal_distribution<double> g;
    Eigen::VectorXcd lam(n);
    for (auto& l : lam) l = cd(g(rng), g(rng));
    check_normal(u * lam.asDiagonal() * u.adjoint());
  }
}

TEST_CASE("W_p examples") {
  const ComplexMatrix a0 = -ComplexMatrix::Identity(2, 2);
  auto w = w_p_set({a0, coupled_pair_l(), std::nullopt}, 1.0);
  CHECK(w.min_real() == doctest::Approx(-3.0));
  CHECK(w.max_real() == doctest::Approx(-1.0));
  CHECK(w.max_abs_imag() < 1e-12);

  w = w_p_set({-ComplexMatrix::Identity(3, 3), rotation_block_l(), std::nullopt}, 1.0);
  CHECK(w.points.size() == 3);
  for (cd e : {cd(-0.2), cd(-2, 2), cd(-2, -2)}) CHECK(dist_to_set(e, w.points) < 1e-10);

  // B = alpha A collapses to {-alpha} for every p.
  std::mt19937 rng(5);
  const ComplexMatrix a = random_negative_definite(4, rng);
  for (double p : {0.0, 1.0, 2.0, 3.5}) {
    w = w_p_set({a, 0.7 * a, std::nullopt}, p);
    for (const auto& q : w.points) CHECK(std::abs(q + 0.7) < 1e-9);
  }
}

TEST_CASE("random pairs: Rayleigh quotients, eigenvalues inside W_p") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 2 == 0 ? 5 : 8;
    const ComplexMatrix a = random_negative_definite(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);
    const SplittingPair s{a, b, std::nullopt};
    for (double p : {1.0, 2.0}) {
      const SpectralSet w = w_p_set(s, p, 256);
      const ComplexMatrix x = w_p_matrix(s, p);
      for (int i = 0; i < 2000; ++i) CHECK(w.contains(random_rayleigh(x, rng)));
      for (const auto& e : generalized_eigenvalues(s).points) CHECK(w.contains(e));
      const auto [lo, hi] = w_p_real_range(s, p);
      CHECK(lo == doctest::Approx(w.min_real()).epsilon(1e-10));
      CHECK(hi == doctest::Approx(w.max_real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("rescaling identity") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a0 = random_negative_definite(5, rng);
    const ComplexMatrix l = random_matrix(5, rng);
    for (double p : {1.0, 2.0})
      for (double sigma : {0.3, 2.5}) {
        const SpectralSet base = w_p_set({a0, l, std::nullopt}, p);
        const SpectralSet mapped = rescale(base, sigma);
        const SpectralSet direct = w_p_set({sigma * a0, l - sigma * a0, std::nullopt}, p);
        REQUIRE(mapped.support.size() == direct.support.size());
        for (std::size_t i = 0; i < direct.support.size(); ++i)
          CHECK(std::abs(mapped.support[i].value - direct.support[i].value) < 1e-10);
        for (const auto& q : mapped.points) CHECK(direct.outside_distance(q) < 1e-10);
      }
  }
  SpectralSet pts;
  pts.points = {cd(-2, 2), cd(-0.2)};
  const auto r = rescale(pts, 2.5);
  CHECK(std::abs(r.points[0] - cd(0.2, 0.8)) < 1e-14);
  CHECK(std::abs(rescale(pts, 5.0).points[1] - 0.96) < 1e-14);
  CHECK(std::abs(rescale(pts, 1.0).points[1] - 0.8) < 1e-14);
  CHECK_THROWS_AS(rescale(pts, 0.0), ParameterError);
  CHECK_THROWS_AS(rescale(pts, -1.0), ParameterError);
}

TEST_CASE("restriction to the complement of a null space") {
  const int n = 6;
  ComplexMatrix lap = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    lap(i, i) = -2.0;
    lap(i, (i + 1) % n) = 1.0;
    lap(i, (i + n - 1) % n) = 1.0;
  }
  const ComplexMatrix ones = ComplexMatrix::Constant(n, 1, 1.0 / std::sqrt(double(n)));
  CHECK_THROWS_AS(generalized_eigenvalues({lap, 0.5 * lap, std::nullopt}), SingularityError);
  const auto eig = generalized_eigenvalues({lap, 0.5 * lap, ones});
  CHECK(eig.restricted);
  CHECK(eig.points.size() == n - 1);
  for (const auto& e : eig.points) CHECK(std::abs(e + 0.5) < 1e-12);
  const auto w = w_p_set({lap, 0.5 * lap, ones}, 1.0);
  CHECK(w.restricted);
  CHECK(w.max_real() == doctest::Approx(-0.5));
}

TEST_CASE("errors") {
  const ComplexMatrix a = -ComplexMatrix::Identity(2, 2);
  ComplexMatrix nonherm = a;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(w_p_set({nonherm, a, std::nullopt}, 1.0), DefinitenessError);
  CHECK_THROWS_AS(w_p_set({-a, a, std::nullopt}, 1.0), DefinitenessError);
  ComplexMatrix sing = a;
  sing(1, 1) = 0.0;
  CHECK_THROWS_AS(w_p_set({sing, a, std::nullopt}, 1.0), SingularityError);
  CHECK_THROWS_AS(generalized_eigenvalues({sing, a, std::nullopt}), SingularityError);
  CHECK_THROWS_AS(generalized_eigenvalues({a, ComplexMatrix::Identity(3, 3), std::nullopt}), DimensionError);
}
