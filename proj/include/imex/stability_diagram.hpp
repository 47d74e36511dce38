#pragma once

#include <complex>
#include <vector>

namespace imex {

inline constexpr double kMembershipTol = 1e-9;

struct ExtremePoints {
  double m_l = 0.0;  ///< left-most real point of D
  double m_r = 0.0;  ///< right-most real point of D
};

struct Circle {
  double center = 0.0;  ///< on the real axis
  double radius = 0.0;
};

/// Unconditional stability region D(r, delta) of the scheme family:
/// mu in D iff every root of c(z) - mu b(z) lies strictly inside |z| < 1.
/// Boundary points (max root modulus == 1) count as outside.
class StabilityDiagram {
 public:
  StabilityDiagram(int r, double delta);

  int order() const { return r_; }
  double delta() const { return delta_; }

  /// Largest root modulus of c(z) - mu b(z).
  double max_root_modulus(std::complex<double> mu) const;
  /// 1 - max root modulus; positive inside D.
  double margin(std::complex<double> mu) const { return 1.0 - max_root_modulus(mu); }
  bool contains(std::complex<double> mu, double tol = kMembershipTol) const {
    return max_root_modulus(mu) < 1.0 - tol;
  }

  /// Start of the boundary parametrisation on |z| = 1.
  std::complex<double> locus_start() const;
  /// mu(z) = c(z)/b(z) for arg z in [arg z0, 2 pi - arg z0], n points.
  std::vector<std::complex<double>> boundary_locus(int n) const;

  ExtremePoints extreme_points() const;
  Circle asymptotic_circle() const;

 private:
  int r_;
  double delta_;
  std::vector<double> b_, c_;
};

std::vector<std::complex<double>> boundary_locus(int r, double delta, int n);
ExtremePoints extreme_points(int r, double delta);
bool contains(int r, double delta, std::complex<double> mu, double tol = kMembershipTol);
Circle asymptotic_circle(int r, double delta);

}  // namespace imex
