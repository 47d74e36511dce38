#include "imex/channel_flow.hpp"

#include <cmath>
#include <numbers>

#include "imex/errors.hpp"
#include "imex/parallel.hpp"
#include "imex/stability_diagram.hpp"

namespace imex {

using cd = std::complex<double>;

Eigen::MatrixXd ChannelMode::a0_dense() const {
  const double ih2 = 1.0 / (h * h);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ny, ny);
  for (int i = 0; i < ny; ++i) {
    m(i, i) = -2.0 * ih2 - xi * xi;
    if (i > 0) m(i, i - 1) = ih2;
    if (i + 1 < ny) m(i, i + 1) = ih2;
  }
  return m;
}

Eigen::MatrixXd ChannelMode::q_dense() const {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(ny, ny);
  q.col(0) = a / h;
  q.col(ny - 1) = -b / h;
  return q;
}

Eigen::MatrixXd ChannelMode::b_dense() const { return (1.0 - sigma) * a0_dense() + q_dense(); }

SplittingPair ChannelMode::base_pair() const {
  return {a0_dense().cast<cd>(), q_dense().cast<cd>(), std::nullopt};
}

ChannelMode build_mode(double xi, int ny, double sigma) {
  if (ny < 4) throw ParameterError("channel mode needs at least 4 interior points");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  ChannelMode m;
  m.xi = xi;
  m.ny = ny;
  m.sigma = sigma;
  m.h = 1.0 / (ny + 1);
  m.a = Eigen::VectorXd::Zero(ny);
  m.b = Eigen::VectorXd::Zero(ny);
  const double x = std::abs(xi);
  if (x == 0.0) return m;
  // cosh(.)/sinh(x) written with non-positive exponents only.
  const double denom = -std::expm1(-2.0 * x);
  for (int j = 0; j < ny; ++j) {
    const double y = (j + 1) * m.h;
    m.a[j] = x * (std::exp(x * (y - 2.0)) + std::exp(-x * y)) / denom;
    m.b[j] = -x * (std::exp(x * (y - 1.0)) + std::exp(-x * (y + 1.0))) / denom;
  }
  return m;
}

W2Summary w2_mode(const ChannelMode& mode, int n_angles) {
  if (mode.ny > kMaxDenseNy) throw ParameterError("dense W_2 computation is limited to Ny <= 512");
  W2Summary s;
  s.set = w_p_set(mode.base_pair(), 2.0, n_angles);
  s.w_max = s.set.max_real();
  s.w_min = s.set.min_real();
  s.max_abs_imag = s.set.max_abs_imag();
  return s;
}

SpectralSet shift_w2(const SpectralSet& w, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  SpectralSet out = w;
  for (auto& p : out.points) p = 1.0 + (p - 1.0) / sigma;
  for (auto& s : out.support) s.value = std::cos(s.theta) + (s.value - std::cos(s.theta)) / sigma;
  return out;
}

WmaxSweep wmax_sweep(const std::vector<double>& xis, int ny) {
  if (ny > kMaxDenseNy) throw ParameterError("dense W_2 computation is limited to Ny <= 512");
  WmaxSweep out;
  out.rows.resize(xis.size());
  for (std::size_t i = 0; i < xis.size(); ++i) {
    const auto [lo, hi] = w_p_real_range(build_mode(xis[i], ny).base_pair(), 2.0);
    out.rows[i] = {xis[i], hi, lo};
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].xi > out.rows[i - 1].xi && out.rows[i].w_max > out.rows[i - 1].w_max)
      out.monotone_decreasing = false;
  return out;
}

bool certify_mode(const ChannelMode& mode, const SpectralSet& w2, int r, double delta) {
  const StabilityDiagram d(r, delta);
  const SpectralSet shifted = shift_w2(w2, mode.sigma);
  for (const auto& mu : shifted.boundary_samples(256))
    if (!d.contains(mu)) return false;
  return true;
}

ChannelParameters channel_parameters(double lx, int ny, int r, double eta, int n_angles) {
  if (!(lx > 0.0)) throw ParameterError("channel length must be positive");
  ChannelParameters out;
  out.xi1 = 2.0 * std::numbers::pi / lx;
  ChannelMode mode = build_mode(out.xi1, ny);
  const W2Summary w2 = w2_mode(mode, n_angles);
  out.w_max = w2.w_max;
  out.w_min = w2.w_min;
  const IntervalParams p = optimal_interval_params(r, 1.0 - w2.w_max, 1.0 - w2.w_min, eta);
  out.delta = p.delta;
  out.sigma = p.sigma;
  mode.sigma = p.sigma;
  out.certified = certify_mode(mode, w2.set, r, p.delta);

  const SpectralSet eig = generalized_eigenvalues(mode.base_pair());
  out.sbdf3_feasible = sbdf_diffusion_feasible(3, 1.0 - eig.max_real(), 1.0 - eig.min_real());
  return out;
}

ChannelModeOperator::ChannelModeOperator(ChannelMode mode) : mode_(std::move(mode)) {}

Vector ChannelModeOperator::apply_a0(const Vector& u) const {
  const int n = mode_.ny;
  const double ih2 = 1.0 / (mode_.h * mode_.h);
  const double diag = -2.0 * ih2 - mode_.xi * mode_.xi;
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    double v = diag * u[i];
    if (i > 0) v += ih2 * u[i - 1];
    if (i + 1 < n) v += ih2 * u[i + 1];
    out[i] = v;
  }
  return out;
}

Vector ChannelModeOperator::apply_implicit(const Vector& u) const { return mode_.sigma * apply_a0(u); }

Vector ChannelModeOperator::apply_explicit(const Vector& u, double) const {
  Vector out = (1.0 - mode_.sigma) * apply_a0(u);
  out += mode_.a * (u[0] / mode_.h) - mode_.b * (u[mode_.ny - 1] / mode_.h);
  return out;
}

Vector ChannelModeOperator::solve_shifted(double alpha, double beta, const Vector& rhs) const {
  // (alpha I - beta sigma A0) x = rhs, tridiagonal (Thomas algorithm).
  const int n = mode_.ny;
  const double ih2 = 1.0 / (mode_.h * mode_.h);
  const double s = beta * mode_.sigma;
  const double diag = alpha + s * (2.0 * ih2 + mode_.xi * mode_.xi);
  const double off = -s * ih2;
  std::vector<double> cprime(n);
  Vector x(n);
  double denom = diag;
  if (denom == 0.0) throw SingularityError("singular tridiagonal system");
  cprime[0] = off / denom;
  x[0] = rhs[0] / denom;
  for (int i = 1; i < n; ++i) {
    denom = diag - off * cprime[i - 1];
    if (denom == 0.0) throw SingularityError("singular tridiagonal system");
    cprime[i] = off / denom;
    x[i] = (rhs[i] - off * x[i - 1]) / denom;
  }
  for (int i = n - 2; i >= 0; --i) x[i] -= cprime[i] * x[i + 1];
  return x;
}

std::vector<double> integrate_mode(const ChannelMode& mode, const ImExScheme& scheme, double k, long steps,
                                   const Vector& u0) {
  const ChannelModeOperator op(mode);
  BootstrapInit init;
  init.u0 = u0;
  init.substeps = 4;
  StepperState st = initialize(op, scheme, k, init);
  std::vector<double> norms{u0.norm()};
  integrate(st, op, st.t() + static_cast<double>(steps) * k,
            [&](const StepperState& s) { norms.push_back(s.u().norm()); });
  return norms;
}

}  // namespace imex
