#pragma once

#include <functional>
#include <vector>

#include "imex/convergence_report.hpp"
#include "imex/lmm_stepper.hpp"
#include "imex/spectral_grid.hpp"

namespace imex {

/// u_t = (d(x) u_x)_x + f(x,t) on the periodic unit interval, split as
/// A = sigma D^2, B = D (diag(d) - sigma) D.
struct VarDiffProblem {
  std::function<double(double)> d;
  double sigma = 1.0;
  std::function<double(double, double)> forcing;  ///< f(x, t); empty means zero
};

class VarDiffOperator : public SplitOperator {
 public:
  /// The grid must outlive the operator.
  VarDiffOperator(const VarDiffProblem& problem, const PeriodicGrid& grid);

  Eigen::Index dim() const override { return grid_.size(); }
  Vector apply_implicit(const Vector& u) const override;
  Vector apply_explicit(const Vector& u, double t) const override;
  Vector solve_shifted(double alpha, double beta, const Vector& rhs) const override;

  /// Unsplit D (d D u).
  Vector apply_full(const Vector& u) const;
  const Vector& d_nodes() const { return d_; }
  double sigma() const { return sigma_; }

 private:
  const PeriodicGrid& grid_;
  Vector d_;
  double sigma_;
  std::function<double(double, double)> forcing_;
};

VarDiffOperator build_vardiff_operator(const VarDiffProblem& problem, const PeriodicGrid& grid);

/// Dense first-derivative matrix i F^{-1} diag(xi) F (Nyquist xi = N pi).
Eigen::MatrixXcd spectral_derivative_matrix(int n);

/// Dense check of the interval bounds on W_1 and the generalized eigenvalues
/// for the splitting above, restricted to zero-mean vectors.
struct IntervalBoundsReport {
  double sigma = 0.0;
  double d_min = 0.0, d_max = 0.0, d2_min = 0.0, d2_max = 0.0;
  double w1_min = 0.0, w1_max = 0.0;
  double mu_min = 0.0, mu_max = 0.0;
  double max_imag = 0.0;  ///< largest |Im| over eigenvalues (should be ~0)
  /// Nonnegative when the corresponding inequality holds:
  /// [0] w1_min >= 1 - dmax/s, [1] w1_max <= 1 - dmin/s,
  /// [2] mu_min >= 1 - dmax/s, [3] mu_min <= 1 - d2max/s,
  /// [4] mu_max >= 1 - d2min/s, [5] mu_max <= 1 - dmin/s.
  std::vector<double> margins;
  /// Largest distance between a W_1 endpoint and its bound.
  double sharpness_gap = 0.0;

  bool holds(double tol) const;
};

IntervalBoundsReport interval_bounds_check(const Vector& d_nodes, double sigma, int n_angles = 8);

/// Manufactured test: d = 4 + 3 cos(2 pi x), u* = sin(20 t) exp(sin(2 pi x)).
namespace vardiff_reference {
double d(double x);
double exact(double x, double t);
double forcing(double x, double t);
}  // namespace vardiff_reference

struct ConvergenceConfig {
  std::vector<int> orders{1, 2, 3};
  std::vector<double> ks;
  int n = 64;
  double delta = 0.0;
  double sigma = 0.0;
  double t_final = 1.0;
};

/// Max-norm error at t_final of the manufactured test, exact history start.
ConvergenceReport run_vardiff_convergence(const ConvergenceConfig& config);

/// Parses "2^-3..2^-15" or a comma list ("1,2^-2,0.125") into step sizes.
std::vector<double> parse_k_ladder(const std::string& text);

}  // namespace imex
