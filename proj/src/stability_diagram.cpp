#include "imex/stability_diagram.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "imex/coeffs.hpp"
#include "imex/errors.hpp"
#include "imex/polynomial_roots.hpp"

namespace imex {

using cd = std::complex<double>;

namespace {

// cos(pi/r), exact zero at r = 2 so that m_r takes its limiting value.
double cos_pi_over(int r) { return r == 2 ? 0.0 : std::cos(std::numbers::pi / r); }

}  // namespace

StabilityDiagram::StabilityDiagram(int r, double delta) : r_(r), delta_(delta) {
  validate_order_delta(r, delta);
  b_.resize(r + 1);
  c_.resize(r + 1);
  for (int j = 0; j <= r; ++j) {
    c_[j] = static_cast<double>(binomial(r, j)) * std::pow(delta - 1.0, r - j);
    const double diff = static_cast<double>(binomial(r, j)) * (((r - j) % 2 == 0) ? 1.0 : -1.0);
    b_[j] = c_[j] - diff;
  }
  b_[r] = 0.0;
}

double StabilityDiagram::max_root_modulus(cd mu) const {
  std::array<cd, kMaxOrder + 1> p{};
  for (int j = 0; j <= r_; ++j) p[j] = c_[j] - mu * b_[j];
  return max_modulus(polynomial_roots(std::span<const cd>(p.data(), r_ + 1)));
}

cd StabilityDiagram::locus_start() const {
  if (r_ == 1) return 1.0;
  const double pr = std::numbers::pi / r_;
  const cd e = std::polar(1.0, pr);
  const double cr = std::cos(pr);
  const cd num = 2.0 - delta_ - 2.0 * (1.0 - delta_) * cr * e;
  const cd den = 2.0 - delta_ - 2.0 * cr * e;
  return num / den;
}

std::vector<cd> StabilityDiagram::boundary_locus(int n) const {
  if (n < 16) throw ParameterError("boundary_locus needs at least 16 samples");
  const double theta0 = std::abs(std::arg(locus_start()));
  const double theta1 = 2.0 * std::numbers::pi - theta0;
  std::vector<cd> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = theta0 + (theta1 - theta0) * i / (n - 1);
    const cd z = std::polar(1.0, t);
    cd bz = 0.0, cz = 0.0;
    for (int j = r_; j >= 0; --j) {
      bz = bz * z + b_[j];
      cz = cz * z + c_[j];
    }
    out.push_back(cz / bz);
  }
  return out;
}

ExtremePoints StabilityDiagram::extreme_points() const {
  const double q = 1.0 - delta_ / 2.0;
  ExtremePoints e;
  e.m_l = 1.0 / (1.0 - std::pow(q, -r_));
  e.m_r = (r_ == 1) ? 1.0 : 1.0 / (1.0 + std::pow(cos_pi_over(r_) / q, r_));
  return e;
}

Circle StabilityDiagram::asymptotic_circle() const {
  const double rd = r_ * delta_;
  return {-1.0 / rd + (r_ + 1.0) / (2.0 * r_), 1.0 / rd};
}

std::vector<cd> boundary_locus(int r, double delta, int n) {
  return StabilityDiagram(r, delta).boundary_locus(n);
}

ExtremePoints extreme_points(int r, double delta) { return StabilityDiagram(r, delta).extreme_points(); }

bool contains(int r, double delta, cd mu, double tol) { return StabilityDiagram(r, delta).contains(mu, tol); }

Circle asymptotic_circle(int r, double delta) { return StabilityDiagram(r, delta).asymptotic_circle(); }

}  // namespace imex
