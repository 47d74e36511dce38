#pragma once

#include <optional>
#include <vector>

#include "imex/coeffs.hpp"
#include "imex/lmm_stepper.hpp"
#include "imex/recipes.hpp"
#include "imex/spectra.hpp"

namespace imex {

/// One Fourier mode xi of the Stokes channel problem, y in (0,1), Ny
/// interior points, h = 1/(Ny+1):
///   A0 = tridiag(1,-2,1)/h^2 - xi^2 I,  Q = a d1^T + b d2^T,
///   implicit part sigma A0, explicit part B = (1 - sigma) A0 + Q.
struct ChannelMode {
  double xi = 0.0;
  int ny = 0;
  double sigma = 1.0;
  double h = 0.0;
  Eigen::VectorXd a, b;  ///< pressure-boundary profiles (zero for xi = 0)

  Eigen::MatrixXd a0_dense() const;
  Eigen::MatrixXd q_dense() const;
  Eigen::MatrixXd b_dense() const;
  /// Pair (A0, Q) for spectral sets.
  SplittingPair base_pair() const;
};

/// Throws ParameterError for ny < 4.
ChannelMode build_mode(double xi, int ny, double sigma = 1.0);

/// Largest Ny accepted by the dense W_2 routines.
inline constexpr int kMaxDenseNy = 512;

struct W2Summary {
  double w_max = 0.0;
  double w_min = 0.0;
  double max_abs_imag = 0.0;
  SpectralSet set;  ///< W_2(A0, Q)
};

W2Summary w2_mode(const ChannelMode& mode, int n_angles = 256);

/// W_2(sigma A0, B) = 1 - 1/sigma + W_2(A0, Q)/sigma.
SpectralSet shift_w2(const SpectralSet& w2_a0_q, double sigma);

struct WmaxRow {
  double xi = 0.0;
  double w_max = 0.0;
  double w_min = 0.0;
};

struct WmaxSweep {
  std::vector<WmaxRow> rows;
  bool monotone_decreasing = true;
};

WmaxSweep wmax_sweep(const std::vector<double>& xis, int ny);

struct ChannelParameters {
  double delta = 1.0;
  double sigma = 1.0;
  double w_max = 0.0;
  double w_min = 0.0;
  double xi1 = 0.0;
  bool certified = false;   ///< shifted W_2 hull inside D(r, delta)
  bool sbdf3_feasible = true;
};

/// Optimal pair from the smallest nonzero wavenumber 2 pi / lx, mapping
/// d_max -> 1 - W_min and d_min -> 1 - W_max, then certifying the hull.
ChannelParameters channel_parameters(double lx, int ny, int r, double eta, int n_angles = 256);

/// Certifies the shifted W_2 hull of a mode against D(r, delta).
bool certify_mode(const ChannelMode& mode, const SpectralSet& w2_a0_q, int r, double delta);

class ChannelModeOperator : public SplitOperator {
 public:
  explicit ChannelModeOperator(ChannelMode mode);
  Eigen::Index dim() const override { return mode_.ny; }
  Vector apply_implicit(const Vector& u) const override;
  Vector apply_explicit(const Vector& u, double t) const override;
  Vector solve_shifted(double alpha, double beta, const Vector& rhs) const override;
  const ChannelMode& mode() const { return mode_; }

 private:
  Vector apply_a0(const Vector& u) const;
  ChannelMode mode_;
};

/// Norm history of the homogeneous mode problem; throws InstabilityError on blow-up.
std::vector<double> integrate_mode(const ChannelMode& mode, const ImExScheme& scheme, double k, long steps,
                                   const Vector& u0);

}  // namespace imex
