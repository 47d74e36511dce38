#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace imex {

using ComplexMatrix = Eigen::MatrixXcd;

/// L = A + B. When A is singular the caller supplies an orthonormal basis of
/// the excluded subspace (e.g. constants); all sets are then taken on its
/// orthogonal complement V.
struct SplittingPair {
  ComplexMatrix A;
  ComplexMatrix B;
  std::optional<ComplexMatrix> null_basis;

  Eigen::Index dim() const { return A.rows(); }
};

enum class SetKind { eigenvalues, numerical_range };

/// h(theta) = max over the set of Re(e^{i theta} w).
struct SupportSample {
  double theta = 0.0;
  double value = 0.0;
};

struct SpectralSet {
  SetKind kind = SetKind::eigenvalues;
  double p = 0.0;
  bool restricted = false;
  /// Eigenvalues, or convex boundary vertices in counter-clockwise order.
  std::vector<std::complex<double>> points;
  /// Support function samples (numerical ranges only).
  std::vector<SupportSample> support;

  /// Largest violation of a supporting half-plane (or of the hull of the
  /// points for eigenvalue sets); <= 0 means inside.
  double outside_distance(std::complex<double> q) const;
  bool contains(std::complex<double> q, double tol = 1e-8) const { return outside_distance(q) <= tol; }

  /// At least n points along the boundary of the convex hull, vertices included.
  std::vector<std::complex<double>> boundary_samples(std::size_t n) const;

  double max_real() const;
  double min_real() const;
  double max_abs_imag() const;
};

/// Orthonormal basis (columns) of the orthogonal complement of span(null_basis) in C^n.
ComplexMatrix complement_basis(const ComplexMatrix& null_basis, Eigen::Index n);

/// M^exponent for Hermitian positive definite M.
ComplexMatrix hermitian_power(const ComplexMatrix& m, double exponent);

/// Eigenvalues of (-A)^{-1} B (restricted to V when a null basis is given).
SpectralSet generalized_eigenvalues(const SplittingPair& s);

/// Numerical range W(X) via support-function sweep over n_angles directions.
SpectralSet numerical_range(const ComplexMatrix& x, int n_angles = 256);

/// (-A)^{p/2-1} B (-A)^{-p/2} in the eigenbasis of -A (on V when restricted).
ComplexMatrix w_p_matrix(const SplittingPair& s, double p, bool* restricted = nullptr);

/// W_p(A, B) = W((-A)^{p/2-1} B (-A)^{-p/2}).
SpectralSet w_p_set(const SplittingPair& s, double p, int n_angles = 256);

/// (min Re, max Re) of W_p from the extreme eigenvalues of the Hermitian part.
std::pair<double, double> w_p_real_range(const SplittingPair& s, double p);

/// Image of a set under w -> 1 + w / sigma, i.e. the set of the pair
/// (sigma A0, L - sigma A0) given the set of (A0, L).
SpectralSet rescale(const SpectralSet& set, double sigma);

/// Convex hull, counter-clockwise, collinear and duplicate points removed.
std::vector<std::complex<double>> convex_hull(std::vector<std::complex<double>> pts);

}  // namespace imex
