#pragma once

#include <functional>

#include "imex/convergence_report.hpp"
#include "imex/diffusion.hpp"
#include "imex/lmm_stepper.hpp"
#include "imex/spectral_grid.hpp"

namespace imex {

/// rho_t = a div(rho^gamma grad rho) + f, split as A = sigma Laplacian,
/// B(rho) = a div(rho^gamma grad rho) - sigma Laplacian rho.
struct PorousProblem {
  double a = 1.0;
  double gamma = 5.0 / 3.0;
  double sigma = 1.0;
  /// Adds f(., t) into `out` (grid ordering); empty means no forcing.
  std::function<void(double t, Vector& out)> forcing;
};

class PorousOperator : public SplitOperator {
 public:
  /// The grid must outlive the operator.
  PorousOperator(const PorousProblem& problem, const PeriodicGrid& grid);

  Eigen::Index dim() const override { return grid_.size(); }
  Vector apply_implicit(const Vector& u) const override;
  /// Throws DomainError if rho <= 0 anywhere.
  Vector apply_explicit(const Vector& u, double t) const override;
  Vector solve_shifted(double alpha, double beta, const Vector& rhs) const override;

  /// Unsplit a div(rho^gamma grad rho).
  Vector apply_full(const Vector& u) const;

 private:
  Vector nonlinear_part(const Vector& u, double sigma_shift) const;

  const PeriodicGrid& grid_;
  PorousProblem problem_;
};

/// rho* = 2e + exp(sin 4 pi x) cos(2 pi y) cos(2 pi z) cos t with gamma, a.
class PorousManufactured {
 public:
  PorousManufactured(const PeriodicGrid& grid, double a, double gamma);
  Vector exact(double t) const;
  void add_forcing(double t, Vector& out) const;

 private:
  const PeriodicGrid& grid_;
  double a_, gamma_;
  std::vector<double> ex_, ex1_, ex2_, cy_, cy1_, cy2_;
};

/// Max-norm errors at t_final for the manufactured 3D solution (exact history start).
ConvergenceReport run_porous_convergence(const ConvergenceConfig& config, double a = 1.0, double gamma = 5.0 / 3.0);

/// Gaussian initial data 1 + exp(-|x - c|^2 / 0.15^2), no forcing, bootstrap start.
Vector gaussian_initial_data(const PeriodicGrid& grid);

struct GaussianDecayConfig {
  ConvergenceConfig base;  ///< ks must be successive halvings
  double a = 1.0 / 16.0;
  double gamma = 5.0 / 3.0;
  int substeps = 64;
};

/// Self-convergence: rows carry error = ||rho_2k - rho_k|| and rate = R_k =
/// log2(||rho_4k - rho_2k|| / ||rho_2k - rho_k||).
struct GaussianDecayResult {
  ConvergenceReport report;
  /// Peak minus mean at each step of the finest run per order: (order, t, value).
  std::vector<std::tuple<int, double, double>> peak_decay;
  /// Largest relative drift of the mean over all runs.
  double max_mean_drift = 0.0;
};

GaussianDecayResult run_gaussian_decay(const GaussianDecayConfig& config);

}  // namespace imex
