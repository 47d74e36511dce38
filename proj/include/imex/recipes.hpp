#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imex/coeffs.hpp"
#include "imex/spectra.hpp"
#include "imex/stability_diagram.hpp"

namespace imex {

struct FeasibilityResult {
  bool feasible = false;
  std::optional<double> delta_star;  ///< largest delta found by the search
  std::optional<double> delta;       ///< recommended delta (safety factor applied)
  std::optional<double> sigma;       ///< recommended sigma
  std::optional<std::pair<double, double>> sigma_range;  ///< feasible sigma interval at `delta`
  std::string diagnostics;
};

/// Set samples used for certification: hull boundary of W_p plus the
/// generalized eigenvalues.
struct CertificationSet {
  std::vector<std::complex<double>> points;
  std::vector<std::complex<double>> eigenvalues;
};

CertificationSet certification_set(const SpectralSet& wp, const SpectralSet& eig, std::size_t n_samples = 256);

/// Smallest 1 - |root| over all samples (positive: all inside D).
double certification_margin(const StabilityDiagram& d, const CertificationSet& set, double sigma = 0.0);

/// True when every sample (mapped by w -> 1 + w/sigma if sigma > 0) lies in D.
bool certify(const StabilityDiagram& d, const CertificationSet& set, double sigma = 0.0);

/// Largest delta in (0,1] (1e-3 lower limit) with all samples in D(r, delta); 0 if none.
double max_feasible_delta(int r, const CertificationSet& set, double sigma = 0.0, double resolution = 1e-10);

/// Fixed splitting, search delta.
FeasibilityResult recipe_delta(int r, const SplittingPair& s, double p, double safety = 0.95);

/// Fixed scheme; splitting (sigma A0, L - sigma A0) with base.A = A0, base.B = L.
FeasibilityResult recipe_sigma(const ImExScheme& scheme, const SplittingPair& base, double p);

/// Joint search: maximise delta over sigma, ties broken toward small sigma.
FeasibilityResult recipe_joint(int r, const SplittingPair& base, double p, double safety = 0.95);

/// Closed-form feasibility when W_1 / Lambda are real intervals
/// [1 - dmax/sigma, 1 - dmin/sigma].
bool interval_feasible(int r, double dmin, double dmax, double delta, double sigma);

struct IntervalParams {
  double delta = 1.0;
  double sigma = 0.0;
};

/// Optimal (delta, sigma) for the interval case with relative margin eta.
IntervalParams optimal_interval_params(int r, double dmin, double dmax, double eta);

/// Ratio threshold D_r recomputed from the SBDF interval inequalities
/// (infinite for r = 1, 2).
double sbdf_ratio_threshold(int r);

/// Published four-digit thresholds for r = 3, 4, 5.
double tabulated_sbdf_threshold(int r);

/// SBDF (delta = 1) with sigma free: feasible iff d2max < D_r d2min.
bool sbdf_diffusion_feasible(int r, double d2min, double d2max);

}  // namespace imex
