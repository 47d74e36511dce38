#include "imex/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "imex/errors.hpp"

namespace imex {

using cd = std::complex<double>;

namespace {

constexpr double kDeltaFloor = 1e-3;
constexpr double kInf = std::numeric_limits<double>::infinity();

cd map_point(cd w, double sigma) { return sigma > 0.0 ? 1.0 + w / sigma : w; }

double sample_scale(const CertificationSet& set) {
  double s = 0.0;
  for (const auto& w : set.points) s = std::max(s, std::abs(w));
  for (const auto& w : set.eigenvalues) s = std::max(s, std::abs(w));
  return std::max(s, 1e-12);
}

// Logarithmic sigma grid covering [1e-4, 1e6] times the set scale.
std::vector<double> sigma_grid(double scale, int per_decade) {
  std::vector<double> out;
  const int decades = 10;
  for (int i = 0; i <= decades * per_decade; ++i)
    out.push_back(scale * std::pow(10.0, -4.0 + static_cast<double>(i) / per_decade));
  return out;
}

// Bisection in log sigma between a feasible and an infeasible point.
double sigma_edge(const std::function<bool(double)>& ok, double inside, double outside) {
  double a = std::log(inside), b = std::log(outside);
  for (int it = 0; it < 80 && std::abs(a - b) > 1e-12; ++it) {
    const double m = 0.5 * (a + b);
    (ok(std::exp(m)) ? a : b) = m;
  }
  return std::exp(a);
}

std::pair<double, double> sigma_interval(const std::function<bool(double)>& ok, double inside, double lo_limit,
                                         double hi_limit) {
  const double lo = ok(lo_limit) ? lo_limit : sigma_edge(ok, inside, lo_limit);
  const double hi = ok(hi_limit) ? kInf : sigma_edge(ok, inside, hi_limit);
  return {lo, hi};
}

void check_safety(double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety factor must lie in (0, 1]");
}

struct BaseSets {
  SpectralSet eig;
  SpectralSet wp;
  CertificationSet samples;
};

BaseSets base_sets(const SplittingPair& s, double p) {
  BaseSets b{generalized_eigenvalues(s), w_p_set(s, p), {}};
  b.samples = certification_set(b.wp, b.eig);
  return b;
}

}  // namespace

CertificationSet certification_set(const SpectralSet& wp, const SpectralSet& eig, std::size_t n_samples) {
  return {wp.boundary_samples(n_samples), eig.points};
}

double certification_margin(const StabilityDiagram& d, const CertificationSet& set, double sigma) {
  double m = kInf;
  for (const auto& w : set.eigenvalues) m = std::min(m, d.margin(map_point(w, sigma)));
  for (const auto& w : set.points) m = std::min(m, d.margin(map_point(w, sigma)));
  return m;
}

bool certify(const StabilityDiagram& d, const CertificationSet& set, double sigma) {
  // Eigenvalues first: cheap early exit when the necessary condition fails.
  for (const auto& w : set.eigenvalues)
    if (!d.contains(map_point(w, sigma))) return false;
  for (const auto& w : set.points)
    if (!d.contains(map_point(w, sigma))) return false;
  return true;
}

double max_feasible_delta(int r, const CertificationSet& set, double sigma, double resolution) {
  auto ok = [&](double delta) { return certify(StabilityDiagram(r, delta), set, sigma); };
  if (ok(1.0)) return 1.0;
  if (!ok(kDeltaFloor)) return 0.0;
  double lo = kDeltaFloor, hi = 1.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

FeasibilityResult recipe_delta(int r, const SplittingPair& s, double p, double safety) {
  validate_order_delta(r, 1.0);
  check_safety(safety);
  const BaseSets b = base_sets(s, p);
  FeasibilityResult out;

  const StabilityDiagram loosest(r, kDeltaFloor);
  for (const auto& mu : b.eig.points) {
    if (!loosest.contains(mu)) {
      std::ostringstream msg;
      msg << "necessary condition fails: eigenvalue " << mu << " lies outside D(r, 1e-3)";
      out.diagnostics = msg.str();
      return out;
    }
  }
  const double dstar = max_feasible_delta(r, b.samples);
  if (dstar == 0.0) {
    out.diagnostics = "sufficient condition fails for every delta; try another p or splitting";
    return out;
  }
  const double delta = safety * dstar;
  if (!certify(StabilityDiagram(r, delta), b.samples)) {
    out.diagnostics = "recommended delta failed re-certification";
    return out;
  }
  out.feasible = true;
  out.delta_star = dstar;
  out.delta = delta;
  out.diagnostics = "W_p hull certified inside D";
  return out;
}

FeasibilityResult recipe_sigma(const ImExScheme& scheme, const SplittingPair& base, double p) {
  const BaseSets b = base_sets(base, p);
  const StabilityDiagram d(scheme.order, scheme.delta);
  auto ok = [&](double sigma) { return certify(d, b.samples, sigma); };
  const auto grid = sigma_grid(sample_scale(b.samples), 24);

  FeasibilityResult out;
  out.delta = scheme.delta;
  std::size_t first = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (ok(grid[i])) {
      first = i;
      break;
    }
  if (first == grid.size()) {
    const CertificationSet eig_only{{}, b.eig.points};
    bool nc_somewhere = false;
    for (double sg : grid) nc_somewhere = nc_somewhere || certify(d, eig_only, sg);
    out.diagnostics = nc_somewhere ? "sufficient condition fails for every sigma; try another p"
                                   : "necessary condition fails for every sigma";
    return out;
  }
  const auto range = sigma_interval(ok, grid[first], grid.front(), grid.back());
  double sigma = std::isinf(range.second) ? 1.05 * range.first
                                          : std::min(1.05 * range.first, std::sqrt(range.first * range.second));
  if (!ok(sigma)) sigma = grid[first];
  out.feasible = true;
  out.sigma = sigma;
  out.sigma_range = range;
  out.diagnostics = "W_p hull certified inside D";
  return out;
}

FeasibilityResult recipe_joint(int r, const SplittingPair& base, double p, double safety) {
  validate_order_delta(r, 1.0);
  check_safety(safety);
  const BaseSets b = base_sets(base, p);
  const auto grid = sigma_grid(sample_scale(b.samples), 12);
  auto dstar = [&](double sigma) { return max_feasible_delta(r, b.samples, sigma); };

  FeasibilityResult out;
  std::vector<double> best(grid.size());
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    best[i] = dstar(grid[i]);
    if (best[i] > best[arg]) arg = i;
  }
  if (best[arg] == 0.0) {
    out.diagnostics = "no (delta, sigma) pair certified; try another p";
    return out;
  }

  double sigma_opt = grid[arg];
  double delta_opt = best[arg];
  if (delta_opt < 1.0) {
    // Golden-section refinement in log sigma around the best grid point.
    double a = std::log(grid[arg == 0 ? 0 : arg - 1]);
    double c = std::log(grid[std::min(arg + 1, grid.size() - 1)]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = c - g * (c - a), x2 = a + g * (c - a);
    double f1 = dstar(std::exp(x1)), f2 = dstar(std::exp(x2));
    for (int it = 0; it < 60 && c - a > 1e-10; ++it) {
      if (f1 >= f2) {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - g * (c - a);
        f1 = dstar(std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (c - a);
        f2 = dstar(std::exp(x2));
      }
    }
    for (const auto& [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}})
      if (f > delta_opt) {
        delta_opt = f;
        sigma_opt = std::exp(x);
      }
  } else {
    // delta = 1 is attained on a sigma range: take its lower end.
    const StabilityDiagram d1(r, 1.0);
    auto ok1 = [&](double sigma) { return certify(d1, b.samples, sigma); };
    std::size_t first = 0;
    while (best[first] < 1.0) ++first;
    const double lower = first == 0 ? grid[0] : sigma_edge(ok1, grid[first], grid[first - 1]);
    sigma_opt = ok1(1.05 * lower) ? 1.05 * lower : grid[first];
  }

  const double delta = safety * delta_opt;
  const StabilityDiagram d(r, delta);
  auto ok = [&](double sigma) { return certify(d, b.samples, sigma); };
  if (!ok(sigma_opt)) {
    out.diagnostics = "recommended pair failed re-certification";
    return out;
  }
  out.feasible = true;
  out.delta_star = delta_opt;
  out.delta = delta;
  out.sigma = sigma_opt;
  out.sigma_range = sigma_interval(ok, sigma_opt, grid.front(), grid.back());
  out.diagnostics = "W_p hull certified inside D";
  return out;
}

bool interval_feasible(int r, double dmin, double dmax, double delta, double sigma) {
  if (!(dmin > 0.0) || dmax < dmin) throw ParameterError("need 0 < dmin <= dmax");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  const ExtremePoints e = extreme_points(r, delta);
  const double lower = dmax / (1.0 - e.m_l);
  const double upper = e.m_r >= 1.0 ? kInf : dmin / (1.0 - e.m_r);
  return lower < sigma && sigma < upper;
}

IntervalParams optimal_interval_params(int r, double dmin, double dmax, double eta) {
  validate_order_delta(r, 1.0);
  if (!(dmin > 0.0) || dmax < dmin) throw ParameterError("need 0 < dmin <= dmax");
  if (!(eta >= 0.0 && eta < 1.0)) throw ParameterError("eta must lie in [0, 1)");
  if (r <= 2) {
    const double m_l = extreme_points(r, 1.0).m_l;
    return {1.0, 1.05 * dmax / (1.0 - m_l)};
  }
  const double secr = std::pow(std::cos(std::numbers::pi / r), -r);
  const double kappa = dmin / dmax * (1.0 - eta);
  const double delta = 2.0 - 2.0 * std::pow((1.0 - kappa) / (1.0 + kappa * secr), 1.0 / r);
  if (delta >= 1.0) {
    // Narrow range: SBDF already has slack. Take the middle of the sigma window at delta = 1.
    const double qr = std::pow(0.5, r);
    return {1.0, 0.5 * (dmax * (1.0 - qr) + dmin * (1.0 + qr * secr))};
  }
  const double sigma = dmin * (1.0 - eta / 2.0) * (1.0 + secr) / (1.0 + kappa * secr);
  return {delta, sigma};
}

double sbdf_ratio_threshold(int r) {
  validate_order_delta(r, 1.0);
  if (r <= 2) return kInf;
  const double two_r = std::pow(2.0, -r);
  return (1.0 + two_r * std::pow(std::cos(std::numbers::pi / r), -r)) / (1.0 - two_r);
}

double tabulated_sbdf_threshold(int r) {
  switch (r) {
    case 3: return 2.1429;
    case 4: return 1.2667;
    case 5: return 1.0931;
    default: throw ParameterError("tabulated SBDF thresholds exist for r = 3, 4, 5 only");
  }
}

bool sbdf_diffusion_feasible(int r, double d2min, double d2max) {
  if (r < 3 || r > 5) throw ParameterError("SBDF ratio test applies to orders 3..5");
  if (!(d2min > 0.0) || d2max < d2min) throw ParameterError("need 0 < d2min <= d2max");
  return d2max < sbdf_ratio_threshold(r) * d2min;
}

}  // namespace imex
