#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imex/errors.hpp"
#include "imex/lmm_stepper.hpp"
#include "imex/stability_diagram.hpp"

using namespace imex;

namespace {

// Diagonal splitting: (A u)_i = -a_i u_i, (B u)_i = mu_i a_i u_i, so that the
// generalized eigenvalues of B against -A are mu_i.
class DiagonalOperator : public SplitOperator {
 public:
  DiagonalOperator(Vector a, Vector mu) : a_(std::move(a)), mu_(std::move(mu)) {}
  Eigen::Index dim() const override { return a_.size(); }
  Vector apply_implicit(const Vector& u) const override { return -a_.cwiseProduct(u); }
  Vector apply_explicit(const Vector& u, double) const override { return mu_.cwiseProduct(a_).cwiseProduct(u); }
  Vector solve_shifted(double alpha, double beta, const Vector& rhs) const override {
    return rhs.array() / (alpha + beta * a_.array());
  }

 private:
  Vector a_, mu_;
};

DiagonalOperator scalar_op(double a, double mu) { return {Vector::Constant(1, a), Vector::Constant(1, mu)}; }

// Global error at t_final for u' = -(1 - mu) a u with exact history.
double scalar_error(int r, double delta, double a, double mu, double k, double t_final) {
  const DiagonalOperator op = scalar_op(a, mu);
  const double lambda = -(1.0 - mu) * a;
  ExactInit init;
  for (int j = 0; j < r; ++j) init.samples.push_back(Vector::Constant(1, std::exp(lambda * j * k)));
  StepperState s = initialize(op, generate_scheme(r, delta), k, init);
  integrate(s, op, t_final);
  return std::abs(s.u()[0] - std::exp(lambda * s.t()));
}

double max_norm_over(StepperState& s, const SplitOperator& op, long steps) {
  double peak = 0.0;
  integrate(s, op, s.t() + steps * s.k, [&](const StepperState& st) { peak = std::max(peak, st.u().norm()); });
  return peak;
}

}  // namespace

TEST_CASE("single SBDF1 step by hand") {
  // u' = -10u with A = -1, B = -9u.
  const DiagonalOperator op = scalar_op(1.0, -9.0);
  StepperState s = initialize(op, generate_scheme(1, 1.0), 0.1, ExactInit{0.0, {Vector::Constant(1, 1.0)}});
  REQUIRE(s.history.size() == 1);
  CHECK(s.u()[0] == 1.0);
  step(s, op);
  CHECK(s.u()[0] == doctest::Approx(0.1 / 1.1).epsilon(1e-14));
  CHECK(s.t() == doctest::Approx(0.1));
  CHECK(s.steps == 1);
}

TEST_CASE("constant history is preserved when A + B = 0") {
  const DiagonalOperator op({Vector::Constant(3, 2.0)}, {Vector::Constant(3, 1.0)});
  const Vector u0 = Vector::LinSpaced(3, -1.0, 2.0);
  for (int r = 1; r <= 5; ++r)
    for (double delta : {0.1, 0.6, 1.0}) {
      ExactInit init{0.0, std::vector<Vector>(r, u0)};
      StepperState s = initialize(op, generate_scheme(r, delta), 0.5, init);
      REQUIRE(s.history.size() == static_cast<std::size_t>(r));
      integrate(s, op, s.t() + 20 * 0.5);
      // Parasitic roots near 1 for small delta accumulate rounding.
      CHECK((s.u() - u0).norm() < 1e-10);
    }
}

TEST_CASE("integrate with zero steps returns the input state") {
  const DiagonalOperator op = scalar_op(1.0, 0.0);
  StepperState s = initialize(op, generate_scheme(2, 0.5), 0.1,
                              ExactInit{0.0, {Vector::Constant(1, 1.0), Vector::Constant(1, 0.9)}});
  integrate(s, op, s.t());
  CHECK(s.steps == 0);
  CHECK(s.u()[0] == 0.9);
  CHECK_THROWS_AS(integrate(s, op, s.t() + 0.05), ParameterError);
  CHECK_THROWS_AS(integrate(s, op, s.t() - 0.1), ParameterError);
}

TEST_CASE("observed order matches r under halving") {
  for (int r = 1; r <= 5; ++r)
    for (double delta : {0.3, 0.7, 1.0}) {
      const double k = r >= 4 ? 1.0 / 32 : 1.0 / 64;
      const double e1 = scalar_error(r, delta, 1.0, 0.02, k, 2.0);
      const double e2 = scalar_error(r, delta, 1.0, 0.02, k / 2, 2.0);
      CAPTURE(r);
      CAPTURE(delta);
      CHECK(std::log2(e1 / e2) == doctest::Approx(r).epsilon(0.1 / r));
    }
}

TEST_CASE("third order on the u' = -10u example scheme") {
  const double delta = 0.0656;
  std::vector<double> err;
  // Parasitic roots at about 1 - delta decay slowly in n, so the rate settles only for k <= 2^-12.
  for (int p : {12, 13}) err.push_back(scalar_error(3, delta, 1.0, -9.0, std::ldexp(1.0, -p), 1.0));
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(3.0).epsilon(0.1 / 3));
}

TEST_CASE("bootstrap start-up reproduces the analytic history") {
  // u' = -u.
  const DiagonalOperator op = scalar_op(1.0, 0.0);
  for (double k : {0.1, 0.05}) {
    BootstrapInit init;
    init.u0 = Vector::Constant(1, 1.0);
    init.substeps = 64;
    StepperState s = initialize(op, generate_scheme(3, 0.5), k, init);
    REQUIRE(s.history.size() == 3);
    for (int j = 0; j < 3; ++j) {
      CHECK(s.history[j].t == doctest::Approx(j * k));
      CHECK(std::abs(s.history[j].u[0] - std::exp(-j * k)) < 2.0 * (k / 64) * k);
    }
  }
  // First order only start-up still lands within the same bound.
  BootstrapInit init1;
  init1.u0 = Vector::Constant(1, 1.0);
  init1.max_order = 1;
  const double k = 0.1;
  StepperState s = initialize(op, generate_scheme(3, 1.0), k, init1);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(s.history[j].u[0] - std::exp(-j * k)) <= 2.0 * (k / 64) * k * j);
}

TEST_CASE("large steps: example scheme bounded, SBDF3 unstable") {
  const DiagonalOperator op = scalar_op(1.0, -9.0);
  const ExactInit init{0.0, {Vector::Constant(1, 1.0), Vector::Constant(1, 0.5), Vector::Constant(1, 0.25)}};
  StepperState ok = initialize(op, generate_scheme(3, 0.0656), 1e3, init);
  CHECK(max_norm_over(ok, op, 100) < 1e3);

  StepperState bad = initialize(op, generate_scheme(3, 1.0), 1e3, init);
  try {
    integrate(bad, op, bad.t() + 1000 * 1e3);
    FAIL("expected an instability");
  } catch (const InstabilityError& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() <= 1000);
  }
}

TEST_CASE("unconditional stability when every mu lies in D") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 1; r <= 5; ++r)
    for (double delta : {0.1, 0.5, 1.0}) {
      const auto e = extreme_points(r, delta);
      const int n = 6;
      Vector a(n), mu(n);
      for (int i = 0; i < n; ++i) {
        a[i] = std::pow(10.0, -2.0 + 6.0 * u(rng));
        // Real points strictly inside [m_l, m_r].
        mu[i] = e.m_l + (0.05 + 0.9 * u(rng)) * (e.m_r - e.m_l);
      }
      const DiagonalOperator op(a, mu);
      for (double k : {1e-2, 1.0, 1e2, 1e4}) {
        ExactInit init;
        double init_norm = 0.0;
        for (int j = 0; j < r; ++j) {
          Vector v(n);
          for (auto& x : v) x = 2.0 * u(rng) - 1.0;
          init_norm = std::max(init_norm, v.norm());
          init.samples.push_back(v);
        }
        StepperState s = initialize(op, generate_scheme(r, delta), k, init);
        CAPTURE(r);
        CAPTURE(delta);
        CAPTURE(k);
        // The r-fold root of c at 1 - delta allows transient growth of about
        // n^(r-1) (1 - delta)^n / (r-1)!, independent of k.
        CHECK(max_norm_over(s, op, 200) < 1e5 * init_norm);
        CHECK(s.u().norm() < 1e5 * init_norm);
      }
    }
}

TEST_CASE("growth is detected for some k when a mu lies outside D") {
  for (int r = 3; r <= 5; ++r) {
    const auto e = extreme_points(r, 1.0);
    const DiagonalOperator op = scalar_op(1.0, 2.0 * e.m_l);
    bool grew = false;
    for (int p = 0; p <= 20 && !grew; ++p) {
      const double k = std::ldexp(1.0, p);
      ExactInit init;
      for (int j = 0; j < r; ++j) init.samples.push_back(Vector::Constant(1, j % 2 == 0 ? 1.0 : -0.5));
      StepperState s = initialize(op, generate_scheme(r, 1.0), k, init);
      try {
        grew = max_norm_over(s, op, 400) > 1e6;
      } catch (const InstabilityError&) {
        grew = true;
      }
    }
    CAPTURE(r);
    CHECK(grew);
  }
}

TEST_CASE("initialization errors") {
  const DiagonalOperator op = scalar_op(1.0, 0.0);
  const Vector one = Vector::Constant(1, 1.0);
  CHECK_THROWS_AS(initialize(op, generate_scheme(3, 0.5), 0.1, ExactInit{0.0, {one, one}}), InitializationError);
  CHECK_THROWS_AS(initialize(op, generate_scheme(1, 0.5), 0.1, ExactInit{0.0, {one, one}}), InitializationError);
  CHECK_THROWS_AS(initialize(op, generate_scheme(1, 0.5), 0.1, ExactInit{0.0, {Vector::Zero(2)}}), DimensionError);
  CHECK_THROWS_AS(initialize(op, generate_scheme(1, 0.5), 0.0, ExactInit{0.0, {one}}), ParameterError);
  BootstrapInit bad;
  bad.u0 = one;
  bad.substeps = 0;
  CHECK_THROWS_AS(initialize(op, generate_scheme(3, 0.5), 0.1, bad), InitializationError);
  bad.substeps = 4;
  bad.max_order = 3;
  CHECK_THROWS_AS(initialize(op, generate_scheme(3, 0.5), 0.1, bad), InitializationError);
}

TEST_CASE("solver failures carry the step index") {
  class Failing : public SplitOperator {
   public:
    Eigen::Index dim() const override { return 1; }
    Vector apply_implicit(const Vector& u) const override { return -u; }
    Vector apply_explicit(const Vector& u, double) const override { return 0.0 * u; }
    Vector solve_shifted(double alpha, double beta, const Vector& rhs) const override {
      if (++calls > 2) throw std::runtime_error("factorization failed");
      return rhs / (alpha + beta);
    }
    mutable int calls = 0;
  } op;
  StepperState s = initialize(op, generate_scheme(1, 1.0), 0.1, ExactInit{0.0, {Vector::Constant(1, 1.0)}});
  try {
    integrate(s, op, 1.0);
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.step() == 3);
  }
}
