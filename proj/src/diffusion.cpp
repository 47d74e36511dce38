#include "imex/diffusion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <regex>

#include "imex/errors.hpp"
#include "imex/spectra.hpp"

namespace imex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

VarDiffOperator::VarDiffOperator(const VarDiffProblem& problem, const PeriodicGrid& grid)
    : grid_(grid), d_(grid.size()), sigma_(problem.sigma), forcing_(problem.forcing) {
  if (grid.dims() != 1) throw ParameterError("variable-coefficient diffusion needs a 1D grid");
  if (!problem.d) throw ParameterError("diffusion coefficient not set");
  if (!(problem.sigma > 0.0)) throw ParameterError("sigma must be positive");
  for (int j = 0; j < grid.n(); ++j) {
    d_[j] = problem.d(grid.node(j));
    if (!(d_[j] > 0.0)) throw ParameterError("diffusion coefficient must be positive");
  }
}

Vector VarDiffOperator::apply_implicit(const Vector& u) const { return sigma_ * grid_.laplacian(u); }

Vector VarDiffOperator::apply_explicit(const Vector& u, double t) const {
  Vector flux = (d_.array() - sigma_) * grid_.derivative(u).array();
  Vector out = grid_.derivative(flux);
  if (forcing_)
    for (int j = 0; j < grid_.n(); ++j) out[j] += forcing_(grid_.node(j), t);
  return out;
}

Vector VarDiffOperator::solve_shifted(double alpha, double beta, const Vector& rhs) const {
  return grid_.solve_helmholtz(alpha, beta * sigma_, rhs);
}

Vector VarDiffOperator::apply_full(const Vector& u) const {
  Vector flux = d_.array() * grid_.derivative(u).array();
  return grid_.derivative(flux);
}

VarDiffOperator build_vardiff_operator(const VarDiffProblem& problem, const PeriodicGrid& grid) {
  return VarDiffOperator(problem, grid);
}

Eigen::MatrixXcd spectral_derivative_matrix(int n) {
  using cd = std::complex<double>;
  PeriodicGrid grid(1, n);  // wavenumber convention only
  Eigen::MatrixXcd f(n, n), finv(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const double ang = kTwoPi * static_cast<double>((static_cast<long>(j) * l) % n) / n;
      f(j, l) = std::polar(1.0, -ang);
      finv(l, j) = std::polar(1.0, ang) / static_cast<double>(n);
    }
  Eigen::VectorXcd sym(n);
  for (int l = 0; l < n; ++l) sym[l] = cd(0.0, grid.wavenumber(l));
  return finv * sym.asDiagonal() * f;
}

bool IntervalBoundsReport::holds(double tol) const {
  return std::all_of(margins.begin(), margins.end(), [tol](double m) { return m >= -tol; });
}

IntervalBoundsReport interval_bounds_check(const Vector& d_nodes, double sigma, int n_angles) {
  const auto n = static_cast<int>(d_nodes.size());
  if (n < 4) throw ParameterError("interval_bounds_check needs at least 4 nodes");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  const Eigen::MatrixXcd dm = spectral_derivative_matrix(n);
  const Eigen::VectorXcd shifted = (d_nodes.array() - sigma).cast<std::complex<double>>();

  SplittingPair pair;
  pair.A = sigma * dm * dm;
  pair.B = dm * shifted.asDiagonal() * dm;
  pair.null_basis = Eigen::MatrixXcd::Constant(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));

  const SpectralSet w1 = w_p_set(pair, 1.0, n_angles);
  const SpectralSet eig = generalized_eigenvalues(pair);

  std::vector<double> sorted(d_nodes.data(), d_nodes.data() + n);
  std::sort(sorted.begin(), sorted.end());
  IntervalBoundsReport rep;
  rep.sigma = sigma;
  rep.d_min = sorted[0];
  rep.d2_min = sorted[1];
  rep.d2_max = sorted[n - 2];
  rep.d_max = sorted[n - 1];
  rep.w1_min = w1.min_real();
  rep.w1_max = w1.max_real();
  rep.mu_min = eig.min_real();
  rep.mu_max = eig.max_real();
  rep.max_imag = eig.max_abs_imag();

  auto bound = [sigma](double d) { return 1.0 - d / sigma; };
  rep.margins = {rep.w1_min - bound(rep.d_max), bound(rep.d_min) - rep.w1_max,
                 rep.mu_min - bound(rep.d_max), bound(rep.d2_max) - rep.mu_min,
                 rep.mu_max - bound(rep.d2_min), bound(rep.d_min) - rep.mu_max};
  rep.sharpness_gap = std::max(rep.margins[0], rep.margins[1]);
  return rep;
}

namespace vardiff_reference {

double d(double x) { return 4.0 + 3.0 * std::cos(kTwoPi * x); }

double exact(double x, double t) { return std::sin(20.0 * t) * std::exp(std::sin(kTwoPi * x)); }

double forcing(double x, double t) {
  const double s = std::sin(kTwoPi * x), c = std::cos(kTwoPi * x);
  const double e = std::exp(s);
  const double ut = 20.0 * std::cos(20.0 * t) * e;
  // (d u_x)_x = sin(20t) e^s [d'(x) 2 pi c + d(x) 4 pi^2 (c^2 - s)]
  const double dprime = -3.0 * kTwoPi * s;
  const double flux_x = std::sin(20.0 * t) * e * (dprime * kTwoPi * c + d(x) * kTwoPi * kTwoPi * (c * c - s));
  return ut - flux_x;
}

}  // namespace vardiff_reference

ConvergenceReport run_vardiff_convergence(const ConvergenceConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  PeriodicGrid grid(1, cfg.n);
  VarDiffProblem problem{vardiff_reference::d, cfg.sigma, vardiff_reference::forcing};
  const VarDiffOperator op(problem, grid);

  auto exact_field = [&](double t) {
    Vector u(grid.size());
    for (int j = 0; j < grid.n(); ++j) u[j] = vardiff_reference::exact(grid.node(j), t);
    return u;
  };

  ConvergenceReport rep;
  rep.metadata = {{"problem", "1d variable-coefficient diffusion, d = 4 + 3 cos(2 pi x)"},
                  {"exact", "sin(20 t) exp(sin(2 pi x))"},
                  {"norm", "max over grid at t_final"},
                  {"N", std::to_string(cfg.n)},
                  {"delta", format_double(cfg.delta)},
                  {"sigma", format_double(cfg.sigma)},
                  {"t_final", format_double(cfg.t_final)}};
  const Vector reference = exact_field(cfg.t_final);
  for (int r : cfg.orders) {
    const ImExScheme scheme = generate_scheme(r, cfg.delta);
    for (double k : cfg.ks) {
      ConvergenceRow row;
      row.order = r;
      row.k = k;
      row.steps = std::lround(cfg.t_final / k);
      ExactInit init;
      init.t_start = -(r - 1) * k;
      for (int j = 0; j < r; ++j) init.samples.push_back(exact_field(init.t_start + j * k));
      try {
        StepperState st = initialize(op, scheme, k, init);
        integrate(st, op, cfg.t_final);
        row.error = (st.u() - reference).cwiseAbs().maxCoeff();
      } catch (const InstabilityError&) {
        row.unstable = true;
      }
      rep.rows.push_back(row);
    }
  }
  rep.compute_rates();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<double> parse_k_ladder(const std::string& text) {
  static const std::regex range(R"(\s*2\^(-?\d+)\s*\.\.\s*2\^(-?\d+)\s*)");
  static const std::regex power(R"(\s*2\^(-?\d+)\s*)");
  std::smatch m;
  std::vector<double> out;
  if (std::regex_match(text, m, range)) {
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    const int stepdir = a <= b ? 1 : -1;
    for (int e = a;; e += stepdir) {
      out.push_back(std::ldexp(1.0, e));
      if (e == b) break;
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (std::regex_match(item, m, power)) {
      out.push_back(std::ldexp(1.0, std::stoi(m[1])));
    } else {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("bad k entry");
        out.push_back(v);
      } catch (const std::logic_error&) {
        throw ConfigError("cannot parse time step '" + item + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (double k : out)
    if (!(k > 0.0)) throw ConfigError("time steps must be positive");
  if (out.empty()) throw ConfigError("empty time step list");
  return out;
}

}  // namespace imex
