#include "imex/polynomial_roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imex {

namespace {

constexpr int kMaxDegree = 16;
using Companion = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDegree,
                                kMaxDegree>;

// Parlett-Reinsch balancing with powers of two (no rounding introduced).
void balance(Companion& m) {
  const Eigen::Index n = m.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> p) {
  if (p.empty()) throw std::invalid_argument("polynomial_roots: empty coefficient list");
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg > kMaxDegree) throw std::invalid_argument("polynomial_roots: degree too large");
  if (p.back() == 0.0) throw std::invalid_argument("polynomial_roots: zero leading coefficient");
  if (deg == 0) return {};
  if (deg == 1) return {-p[0] / p[1]};

  Companion m = Companion::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) m(i, deg - 1) = -p[i] / p.back();
  balance(m);

  Eigen::ComplexEigenSolver<Companion> es(m, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("polynomial_roots: eigensolver failed");
  std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return out;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> p) {
  std::vector<std::complex<double>> q(p.begin(), p.end());
  return polynomial_roots(std::span<const std::complex<double>>(q));
}

double max_modulus(const std::vector<std::complex<double>>& roots) {
  double out = 0.0;
  for (const auto& z : roots) out = std::max(out, std::abs(z));
  return out;
}

}  // namespace imex
