#include "imex/spectral_grid.hpp"

#include <fftw3.h>

#include <cstring>
#include <numbers>

#include "imex/errors.hpp"

namespace imex {

using cd = std::complex<double>;

struct PeriodicGrid::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }
};

PeriodicGrid::PeriodicGrid(int dims, int n) : dims_(dims), n_(n) {
  if (dims != 1 && dims != 3) throw ParameterError("grid dimension must be 1 or 3");
  if (n < 4 || n % 2 != 0) throw ParameterError("grid size must be even and at least 4");
  const int half = n / 2 + 1;
  size_ = dims == 1 ? n : static_cast<Eigen::Index>(n) * n * n;
  spec_size_ = dims == 1 ? half : static_cast<Eigen::Index>(n) * n * half;

  xi_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i < n / 2) xi_[i] = 2.0 * std::numbers::pi * i;
    else if (i == n / 2) xi_[i] = n * std::numbers::pi;
    else xi_[i] = 2.0 * std::numbers::pi * (i - n);
  }

  xi2_.resize(spec_size_);
  for (int ax = 0; ax < dims; ++ax) dsym_[ax].resize(spec_size_);
  if (dims == 1) {
    for (int l = 0; l < half; ++l) {
      xi2_[l] = xi_[l] * xi_[l];
      dsym_[0][l] = l == n / 2 ? cd(0.0) : cd(0.0, xi_[l]);
    }
  } else {
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < half; ++l, ++idx) {
          xi2_[idx] = xi_[i] * xi_[i] + xi_[j] * xi_[j] + xi_[l] * xi_[l];
          dsym_[0][idx] = i == n / 2 ? cd(0.0) : cd(0.0, xi_[i]);
          dsym_[1][idx] = j == n / 2 ? cd(0.0) : cd(0.0, xi_[j]);
          dsym_[2][idx] = l == n / 2 ? cd(0.0) : cd(0.0, xi_[l]);
        }
  }

  plans_ = std::make_unique<Plans>();
  plans_->real = fftw_alloc_real(size_);
  plans_->spec = fftw_alloc_complex(spec_size_);
  if (dims == 1) {
    plans_->fwd = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->inv = fftw_plan_dft_c2r_1d(n, plans_->spec, plans_->real, FFTW_ESTIMATE);
  } else {
    plans_->fwd = fftw_plan_dft_r2c_3d(n, n, n, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->inv = fftw_plan_dft_c2r_3d(n, n, n, plans_->spec, plans_->real, FFTW_ESTIMATE);
  }
  if (!plans_->fwd || !plans_->inv) throw std::runtime_error("FFTW plan creation failed");
}

PeriodicGrid::~PeriodicGrid() = default;

void PeriodicGrid::forward(const Vector& u, std::vector<cd>& spec) const {
  if (u.size() != size_) throw DimensionError("field size does not match grid");
  std::memcpy(plans_->real, u.data(), sizeof(double) * size_);
  fftw_execute(plans_->fwd);
  spec.resize(spec_size_);
  std::memcpy(static_cast<void*>(spec.data()), plans_->spec, sizeof(fftw_complex) * spec_size_);
}

Vector PeriodicGrid::inverse(const std::vector<cd>& spec) const {
  std::memcpy(plans_->spec, spec.data(), sizeof(fftw_complex) * spec_size_);
  fftw_execute(plans_->inv);
  Vector out(size_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (Eigen::Index i = 0; i < size_; ++i) out[i] = plans_->real[i] * scale;
  return out;
}

Vector PeriodicGrid::derivative(const Vector& u, int axis) const {
  if (axis < 0 || axis >= dims_) throw ParameterError("derivative axis out of range");
  std::vector<cd> s;
  forward(u, s);
  const auto& sym = dsym_[axis];
  for (Eigen::Index i = 0; i < spec_size_; ++i) s[i] *= sym[i];
  return inverse(s);
}

Vector PeriodicGrid::laplacian(const Vector& u) const {
  std::vector<cd> s;
  forward(u, s);
  for (Eigen::Index i = 0; i < spec_size_; ++i) s[i] *= -xi2_[i];
  return inverse(s);
}

Vector PeriodicGrid::solve_helmholtz(double alpha, double beta_coef, const Vector& rhs) const {
  std::vector<cd> s;
  forward(rhs, s);
  for (Eigen::Index i = 0; i < spec_size_; ++i) {
    const double denom = alpha + beta_coef * xi2_[i];
    if (denom == 0.0) throw SingularityError("shifted Laplacian is singular");
    s[i] /= denom;
  }
  return inverse(s);
}

}  // namespace imex
