#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace imex {

using Vector = Eigen::VectorXd;

/// Uniform periodic grid on [0,1)^d (d = 1 or 3), x_j = j h, h = 1/N, with
/// Fourier spectral differentiation. Wavenumbers follow the usual FFT
/// ordering with the Nyquist entry set to +N pi. First derivatives drop the
/// Nyquist mode; the Laplacian keeps -(N pi)^2 there.
///
/// Not thread-safe: transforms share per-grid work buffers.
class PeriodicGrid {
 public:
  PeriodicGrid(int dims, int n);
  ~PeriodicGrid();
  PeriodicGrid(const PeriodicGrid&) = delete;
  PeriodicGrid& operator=(const PeriodicGrid&) = delete;

  int dims() const { return dims_; }
  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  /// Number of grid points N^d.
  Eigen::Index size() const { return size_; }
  /// Number of stored (half-spectrum) coefficients.
  Eigen::Index spectral_size() const { return spec_size_; }
  double node(int i) const { return i * h(); }

  /// Wavenumber for index i in 0..N-1.
  double wavenumber(int i) const { return xi_[i]; }
  const std::vector<double>& wavenumbers() const { return xi_; }

  /// Unnormalised forward transform; inverse includes the 1/N^d factor.
  void forward(const Vector& u, std::vector<std::complex<double>>& spec) const;
  Vector inverse(const std::vector<std::complex<double>>& spec) const;

  /// Squared wavenumber magnitude |xi|^2 of each stored coefficient.
  const std::vector<double>& xi_squared() const { return xi2_; }
  /// i xi_axis for each stored coefficient, zero on that axis' Nyquist index.
  const std::vector<std::complex<double>>& derivative_symbol(int axis) const { return dsym_[axis]; }

  Vector derivative(const Vector& u, int axis = 0) const;
  Vector laplacian(const Vector& u) const;
  /// Solves (alpha - beta * coef * Laplacian) x = rhs.
  Vector solve_helmholtz(double alpha, double beta_coef, const Vector& rhs) const;

  /// Mean over grid points.
  double mean(const Vector& u) const { return u.mean(); }

 private:
  struct Plans;
  int dims_, n_;
  Eigen::Index size_, spec_size_;
  std::vector<double> xi_;
  std::vector<double> xi2_;
  std::array<std::vector<std::complex<double>>, 3> dsym_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace imex
